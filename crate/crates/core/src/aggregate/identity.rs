use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::rdf::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("identity map line {0}: {1}")]
    Line(usize, String),
}

/// Union-find over account IRIs.
///
/// A class's canonical IRI is its smallest registered canonical member, or
/// its lexicographically smallest member when none is registered.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AccountMapping {
    parent: BTreeMap<Iri, Iri>,
    /// Per root: (smallest member, smallest registered canonical).
    meta: BTreeMap<Iri, (Iri, Option<Iri>)>,
}

impl AccountMapping {
    pub fn new() -> Self {
        Self::default()
    }

    fn root(&self, a: &Iri) -> Option<Iri> {
        let mut cur = self.parent.get(a)?;
        loop {
            let next = &self.parent[cur];
            if next == cur {
                return Some(cur.clone());
            }
            cur = next;
        }
    }

    fn ensure(&mut self, a: &Iri) -> Iri {
        if let Some(r) = self.root(a) {
            return r;
        }
        self.parent.insert(a.clone(), a.clone());
        self.meta.insert(a.clone(), (a.clone(), None));
        a.clone()
    }

    /// Puts `a` and `b` in the same class.
    pub fn merge(&mut self, a: &Iri, b: &Iri) {
        let ra = self.ensure(a);
        let rb = self.ensure(b);
        if ra == rb {
            return;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        let (dmin, dcanon) = self.meta.remove(&drop).expect("root has metadata");
        let (kmin, kcanon) = self.meta.get_mut(&keep).expect("root has metadata");
        if dmin < *kmin {
            *kmin = dmin;
        }
        *kcanon = match (kcanon.take(), dcanon) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        self.parent.insert(drop, keep);
        // Keep lookups shallow: point every member straight at the root.
        let root = self.root(a).expect("just merged");
        let members: Vec<Iri> = self.parent.keys().filter(|m| self.root(m).as_ref() == Some(&root)).cloned().collect();
        for m in members {
            self.parent.insert(m, root.clone());
        }
    }

    /// Marks `a` as the canonical IRI of its class.
    pub fn register_canonical(&mut self, a: &Iri) {
        let r = self.ensure(a);
        let (_, canon) = self.meta.get_mut(&r).expect("root has metadata");
        *canon = Some(match canon.take() {
            Some(c) => c.min(a.clone()),
            None => a.clone(),
        });
    }

    /// Canonical IRI for `a`; an unknown account is its own canonical.
    pub fn resolve(&self, a: &Iri) -> Iri {
        match self.root(a) {
            Some(r) => {
                let (min, canon) = &self.meta[&r];
                canon.clone().unwrap_or_else(|| min.clone())
            }
            None => a.clone(),
        }
    }

    /// Every account known to belong to the same user as `a`, including `a`.
    pub fn accounts_of(&self, a: &Iri) -> BTreeSet<Iri> {
        match self.root(a) {
            Some(r) => self.parent.keys().filter(|m| self.root(m).as_ref() == Some(&r)).cloned().collect(),
            None => BTreeSet::from([a.clone()]),
        }
    }

    /// Equivalence classes with more than one member known to the mapping.
    pub fn classes(&self) -> Vec<BTreeSet<Iri>> {
        let mut by_root: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
        for m in self.parent.keys() {
            by_root.entry(self.root(m).expect("member")).or_default().insert(m.clone());
        }
        by_root.into_values().collect()
    }

    /// Parses `IRI<TAB>IRI[<TAB>canonical]` lines. The optional third column
    /// marks the second IRI as canonical. Blank and `#` lines are skipped.
    pub fn from_tsv(text: &str) -> Result<Self, IdentityError> {
        let mut m = AccountMapping::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| IdentityError::Line(n + 1, msg);
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if !(2..=3).contains(&cols.len()) {
                return Err(bad("expected two IRIs and an optional 'canonical' marker".into()));
            }
            let a = Iri::new(cols[0]).map_err(|e| bad(e.to_string()))?;
            let b = Iri::new(cols[1]).map_err(|e| bad(e.to_string()))?;
            m.merge(&a, &b);
            match cols.get(2) {
                None => {}
                Some(&"canonical") => m.register_canonical(&b),
                Some(other) => return Err(bad(format!("unknown marker '{other}'"))),
            }
        }
        Ok(m)
    }
}

/// Functional form of [`AccountMapping::merge`].
pub fn merge_accounts(mut m: AccountMapping, a: &Iri, b: &Iri) -> AccountMapping {
    m.merge(a, b);
    m
}

pub fn resolve_identity(m: &AccountMapping, a: &Iri) -> Iri {
    m.resolve(a)
}
