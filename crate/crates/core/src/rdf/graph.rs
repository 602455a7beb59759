use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::ops::Bound;

use super::{BlankNode, Iri, RdfError, Term, Triple, TriplePattern};
use crate::vocab;

/// In-memory triple store with set semantics.
///
/// Triples are kept in subject-predicate-object order; two secondary indexes
/// (predicate-object-subject and object-subject-predicate) serve patterns
/// whose subject is unbound. Results are always returned in SPO order.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    spo: BTreeSet<Triple>,
    pos: BTreeSet<(Iri, Term, Term)>,
    osp: BTreeSet<(Term, Term, Iri)>,
    prefixes: BTreeMap<String, Iri>,
    used_blanks: HashSet<String>,
    next_blank: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph preloaded with the standard prefix map.
    pub fn with_standard_prefixes() -> Self {
        let mut g = Graph::new();
        for (label, ns) in vocab::STANDARD_PREFIXES {
            g.prefixes.insert((*label).to_owned(), Iri::from_parts(ns, ""));
        }
        g
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, t: Triple) -> bool {
        if self.spo.contains(&t) {
            return false;
        }
        for term in [t.subject(), t.object()] {
            if let Term::BlankNode(b) = term {
                self.used_blanks.insert(b.label().to_owned());
            }
        }
        self.pos
            .insert((t.predicate().clone(), t.object().clone(), t.subject().clone()));
        self.osp
            .insert((t.object().clone(), t.subject().clone(), t.predicate().clone()));
        self.spo.insert(t)
    }

    pub fn remove(&mut self, t: &Triple) -> bool {
        if !self.spo.remove(t) {
            return false;
        }
        self.pos
            .remove(&(t.predicate().clone(), t.object().clone(), t.subject().clone()));
        self.osp
            .remove(&(t.object().clone(), t.subject().clone(), t.predicate().clone()));
        true
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.spo.contains(t)
    }

    /// All triples in store order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.spo.iter()
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, label: &str, namespace: Iri) -> Result<(), RdfError> {
        if !valid_prefix_label(label) {
            return Err(RdfError::InvalidPrefix(label.to_owned()));
        }
        self.prefixes.insert(label.to_owned(), namespace);
        Ok(())
    }

    /// A blank node whose label is not used anywhere in this graph.
    pub fn fresh_blank(&mut self) -> BlankNode {
        loop {
            let label = format!("b{}", self.next_blank);
            self.next_blank += 1;
            if self.used_blanks.insert(label.clone()) {
                return BlankNode(label);
            }
        }
    }

    /// Returns exactly the triples unifying with `p`, in store order.
    pub fn matching(&self, p: &TriplePattern) -> Vec<Triple> {
        if let Some(s) = &p.subject {
            let lower = Triple {
                subject: s.clone(),
                predicate: p.predicate.clone().unwrap_or_else(Iri::min_value),
                object: match (&p.predicate, &p.object) {
                    (Some(_), Some(o)) => o.clone(),
                    _ => Term::min_value(),
                },
            };
            return self
                .spo
                .range((Bound::Included(lower), Bound::Unbounded))
                .take_while(|t| t.subject() == s)
                .filter(|t| p.matches(t))
                .cloned()
                .collect();
        }
        let mut out: Vec<Triple> = if let Some(pred) = &p.predicate {
            let lower = (
                pred.clone(),
                p.object.clone().unwrap_or_else(Term::min_value),
                Term::min_value(),
            );
            self.pos
                .range((Bound::Included(lower), Bound::Unbounded))
                .take_while(|(pp, oo, _)| pp == pred && p.object.as_ref().is_none_or(|o| o == oo))
                .map(|(pp, oo, ss)| Triple {
                    subject: ss.clone(),
                    predicate: pp.clone(),
                    object: oo.clone(),
                })
                .collect()
        } else if let Some(obj) = &p.object {
            let lower = (obj.clone(), Term::min_value(), Iri::min_value());
            self.osp
                .range((Bound::Included(lower), Bound::Unbounded))
                .take_while(|(oo, _, _)| oo == obj)
                .map(|(oo, ss, pp)| Triple {
                    subject: ss.clone(),
                    predicate: pp.clone(),
                    object: oo.clone(),
                })
                .collect()
        } else {
            return self.spo.iter().cloned().collect();
        };
        out.sort();
        out
    }

    /// Objects of `(subject, predicate, ?)` in store order.
    pub fn objects(&self, subject: &Term, predicate: &Iri) -> Vec<Term> {
        self.matching(&TriplePattern::new(
            Some(subject.clone()),
            Some(predicate.clone()),
            None,
        ))
        .into_iter()
        .map(|t| t.into_parts().2)
        .collect()
    }

    /// First object of `(subject, predicate, ?)` in store order.
    pub fn object(&self, subject: &Term, predicate: &Iri) -> Option<Term> {
        self.objects(subject, predicate).into_iter().next()
    }

    /// Subjects of `(?, predicate, object)` in store order.
    pub fn subjects(&self, predicate: &Iri, object: Option<&Term>) -> Vec<Term> {
        let mut subjects: Vec<Term> = self
            .matching(&TriplePattern::new(None, Some(predicate.clone()), object.cloned()))
            .into_iter()
            .map(|t| t.into_parts().0)
            .collect();
        subjects.dedup();
        subjects
    }

    /// Adds every triple of `other`, renaming its blank nodes to labels fresh
    /// in this graph. Prefixes of `other` are added when not already bound.
    /// Returns the number of triples that were new.
    pub fn merge(&mut self, other: &Graph) -> usize {
        let mut renames: HashMap<BlankNode, BlankNode> = HashMap::new();
        let mut rename = |g: &mut Graph, term: &Term| -> Term {
            match term {
                Term::BlankNode(b) => Term::BlankNode(
                    renames.entry(b.clone()).or_insert_with(|| g.fresh_blank()).clone(),
                ),
                other => other.clone(),
            }
        };
        let mut added = 0;
        for t in other.iter() {
            let s = rename(self, t.subject());
            let o = rename(self, t.object());
            let triple = Triple {
                subject: s,
                predicate: t.predicate().clone(),
                object: o,
            };
            if self.insert(triple) {
                added += 1;
            }
        }
        for (label, ns) in &other.prefixes {
            self.prefixes.entry(label.clone()).or_insert_with(|| ns.clone());
        }
        added
    }

    /// Adds every triple of `other` verbatim, blank labels included.
    pub fn extend_verbatim(&mut self, other: &Graph) {
        for t in other.iter() {
            self.insert(t.clone());
        }
    }

    #[cfg(test)]
    pub(crate) fn triple_set(&self) -> &BTreeSet<Triple> {
        &self.spo
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.spo == other.spo && self.prefixes == other.prefixes
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

pub(crate) fn valid_prefix_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_alphabetic() => {
            !label.ends_with('.')
                && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.')
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Literal;
    use proptest::prelude::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    fn sample() -> Graph {
        let mut g = Graph::new();
        for (s, p, o) in [("a", "p", "b"), ("a", "q", "c"), ("b", "p", "c"), ("c", "p", "a"), ("c", "q", "c")] {
            g.insert(Triple::spo(&iri(s), &iri(p), iri(o)));
        }
        g
    }

    #[test]
    fn wildcard_pattern_returns_all() {
        let g = sample();
        assert_eq!(g.matching(&TriplePattern::any()).len(), 5);
    }

    #[test]
    fn insert_is_idempotent() {
        let mut g = sample();
        assert!(!g.insert(Triple::spo(&iri("a"), &iri("p"), iri("b"))));
        assert_eq!(g.len(), 5);
    }

    #[test]
    fn concrete_pattern_matches_at_most_one() {
        let g = sample();
        let hit = TriplePattern::new(Some(iri("a").into()), Some(iri("p")), Some(iri("b").into()));
        let miss = TriplePattern::new(Some(iri("a").into()), Some(iri("p")), Some(iri("c").into()));
        assert_eq!(g.matching(&hit).len(), 1);
        assert!(g.matching(&miss).is_empty());
    }

    #[test]
    fn remove_updates_indexes() {
        let mut g = sample();
        let t = Triple::spo(&iri("b"), &iri("p"), iri("c"));
        assert!(g.remove(&t));
        let by_object = TriplePattern::new(None, None, Some(iri("c").into()));
        assert_eq!(g.matching(&by_object).len(), 2);
        let by_pred = TriplePattern::new(None, Some(iri("p")), None);
        assert_eq!(g.matching(&by_pred).len(), 2);
    }

    #[test]
    fn merge_renames_blank_nodes() {
        let mut a = Graph::new();
        let b0 = a.fresh_blank();
        a.insert(Triple::bpo(&b0, &iri("p"), Literal::string("x")));
        let mut b = Graph::new();
        let other = b.fresh_blank();
        assert_eq!(other.label(), b0.label());
        b.insert(Triple::bpo(&other, &iri("p"), Literal::string("y")));
        a.merge(&b);
        assert_eq!(a.len(), 2);
        let subjects: HashSet<_> = a.iter().map(|t| t.subject().clone()).collect();
        assert_eq!(subjects.len(), 2);
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        prop_oneof![
            (0u8..4).prop_map(|i| Term::Iri(iri(&format!("n{i}")))),
            (0u8..2).prop_map(|i| Term::BlankNode(BlankNode::new(format!("x{i}")).unwrap())),
            (0u8..2).prop_map(|i| Term::Literal(Literal::integer(i as i64))),
        ]
    }

    fn arb_triple() -> impl Strategy<Value = Triple> {
        (arb_term(), 0u8..3, arb_term()).prop_filter_map("literal subject", |(s, p, o)| {
            Triple::new(s, iri(&format!("p{p}")), o).ok()
        })
    }

    proptest! {
        #[test]
        fn matching_equals_linear_scan(
            triples in prop::collection::vec(arb_triple(), 0..25),
            s in prop::option::of(arb_term()),
            p in prop::option::of(0u8..3),
            o in prop::option::of(arb_term()),
        ) {
            let g: Graph = triples.into_iter().collect();
            let pattern = TriplePattern::new(s, p.map(|p| iri(&format!("p{p}"))), o);
            let expected: Vec<Triple> = g.iter().filter(|t| pattern.matches(t)).cloned().collect();
            prop_assert_eq!(g.matching(&pattern), expected);
        }
    }
}
