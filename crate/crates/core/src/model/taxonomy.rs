use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::ModelError;
use crate::rdf::{Graph, Iri, Term};
use crate::vocab;

/// Concept DAG with `broader` edges towards a single root, symmetric
/// `related` edges and surface labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptTaxonomy {
    root: Iri,
    concepts: BTreeSet<Iri>,
    broader: BTreeMap<Iri, BTreeSet<Iri>>,
    narrower: BTreeMap<Iri, BTreeSet<Iri>>,
    related: BTreeSet<(Iri, Iri)>,
    labels: BTreeMap<Iri, BTreeSet<String>>,
    /// Shortest broader-path length to the root, for reachable concepts.
    depth: BTreeMap<Iri, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Concepts lying on a broader-cycle.
    Cycle(Vec<Iri>),
    Unreachable(Iri),
    RelatedReflexive(Iri),
    RelatedAsymmetric(Iri, Iri),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle(nodes) => {
                let names: Vec<&str> = nodes.iter().map(Iri::as_str).collect();
                write!(f, "broader cycle through {}", names.join(", "))
            }
            Violation::Unreachable(c) => write!(f, "<{c}> does not reach the root"),
            Violation::RelatedReflexive(c) => write!(f, "<{c}> is related to itself"),
            Violation::RelatedAsymmetric(a, b) => write!(f, "<{a}> related to <{b}> but not the reverse"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TaxonomyBuilder {
    t: ConceptTaxonomy,
}

impl TaxonomyBuilder {
    pub fn new(root: Iri) -> Self {
        let mut concepts = BTreeSet::new();
        concepts.insert(root.clone());
        TaxonomyBuilder {
            t: ConceptTaxonomy {
                root,
                concepts,
                broader: BTreeMap::new(),
                narrower: BTreeMap::new(),
                related: BTreeSet::new(),
                labels: BTreeMap::new(),
                depth: BTreeMap::new(),
            },
        }
    }

    pub fn concept(&mut self, c: Iri) -> &mut Self {
        self.t.concepts.insert(c);
        self
    }

    pub fn broader(&mut self, child: Iri, parent: Iri) -> &mut Self {
        self.t.concepts.insert(child.clone());
        self.t.concepts.insert(parent.clone());
        self.t.broader.entry(child.clone()).or_default().insert(parent.clone());
        self.t.narrower.entry(parent).or_default().insert(child);
        self
    }

    /// Adds the edge in both directions.
    pub fn related(&mut self, a: Iri, b: Iri) -> &mut Self {
        self.related_one_way(a.clone(), b.clone());
        self.related_one_way(b, a)
    }

    pub fn related_one_way(&mut self, a: Iri, b: Iri) -> &mut Self {
        self.t.concepts.insert(a.clone());
        self.t.concepts.insert(b.clone());
        self.t.related.insert((a, b));
        self
    }

    pub fn label(&mut self, c: Iri, label: impl Into<String>) -> &mut Self {
        self.t.concepts.insert(c.clone());
        self.t.labels.entry(c).or_default().insert(label.into());
        self
    }

    /// Builds and validates; any violation is an error.
    pub fn build(&self) -> Result<ConceptTaxonomy, ModelError> {
        let t = self.build_unchecked();
        let violations = validate_taxonomy(&t);
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(ModelError::Taxonomy(violations))
        }
    }

    /// Builds without validation, for inspecting malformed inputs.
    pub fn build_unchecked(&self) -> ConceptTaxonomy {
        let mut t = self.t.clone();
        t.depth = bfs(&t.root, &t.narrower);
        t
    }
}

fn bfs(start: &Iri, edges: &BTreeMap<Iri, BTreeSet<Iri>>) -> BTreeMap<Iri, usize> {
    let mut dist = BTreeMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for n in edges.get(&c).into_iter().flatten() {
            if !dist.contains_key(n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n.clone());
            }
        }
    }
    dist
}

impl ConceptTaxonomy {
    /// Loads concepts from `skos:broader`, `skos:related`, `rdf:type
    /// skos:Concept` and label triples (`rdfs:label`, `skos:prefLabel`,
    /// `skos:altLabel`). `skos:related` is symmetric by definition, so one
    /// stated direction suffices.
    pub fn from_graph(g: &Graph, root: &Iri) -> Result<Self, ModelError> {
        let mut b = TaxonomyBuilder::new(root.clone());
        let p = Iri::constant;
        for t in g.iter() {
            let (Some(s), pred) = (t.subject().as_iri(), t.predicate().as_str()) else {
                continue;
            };
            match (pred, t.object()) {
                (vocab::SKOS_BROADER, Term::Iri(o)) => {
                    b.broader(s.clone(), o.clone());
                }
                (vocab::SKOS_RELATED, Term::Iri(o)) => {
                    b.related(s.clone(), o.clone());
                }
                (vocab::RDFS_LABEL | vocab::SKOS_PREF_LABEL | vocab::SKOS_ALT_LABEL, Term::Literal(l)) => {
                    b.label(s.clone(), l.lexical());
                }
                (vocab::RDF_TYPE, Term::Iri(o)) if *o == p(&vocab::term(vocab::SKOS, "Concept")) => {
                    b.concept(s.clone());
                }
                _ => {}
            }
        }
        b.build()
    }

    pub fn root(&self) -> &Iri {
        &self.root
    }

    pub fn concepts(&self) -> &BTreeSet<Iri> {
        &self.concepts
    }

    pub fn contains(&self, c: &Iri) -> bool {
        self.concepts.contains(c)
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn parents(&self, c: &Iri) -> impl Iterator<Item = &Iri> {
        self.broader.get(c).into_iter().flatten()
    }

    pub fn children(&self, c: &Iri) -> impl Iterator<Item = &Iri> {
        self.narrower.get(c).into_iter().flatten()
    }

    pub fn related_edges(&self) -> &BTreeSet<(Iri, Iri)> {
        &self.related
    }

    pub fn is_related(&self, a: &Iri, b: &Iri) -> bool {
        self.related.contains(&(a.clone(), b.clone()))
    }

    pub fn labels(&self) -> &BTreeMap<Iri, BTreeSet<String>> {
        &self.labels
    }

    fn check(&self, c: &Iri) -> Result<(), ModelError> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(ModelError::UnknownConcept(c.clone()))
        }
    }

    /// Shortest broader-path length from `c` to the root.
    pub fn depth(&self, c: &Iri) -> Result<usize, ModelError> {
        self.check(c)?;
        self.depth.get(c).copied().ok_or_else(|| ModelError::UnknownConcept(c.clone()))
    }

    /// `c` and all its ancestors, with shortest broader-path distances.
    pub fn ancestors(&self, c: &Iri) -> Result<BTreeMap<Iri, usize>, ModelError> {
        self.check(c)?;
        Ok(bfs(c, &self.broader))
    }

    /// `c` and all its descendants, with shortest broader-path distances.
    pub fn descendants(&self, c: &Iri) -> Result<BTreeMap<Iri, usize>, ModelError> {
        self.check(c)?;
        Ok(bfs(c, &self.narrower))
    }

    /// Deepest common ancestor; ties go to the smallest IRI.
    ///
    /// In a DAG an ancestor can be deeper than its descendant (when the
    /// descendant also has a shorter route to the root), so candidates are
    /// limited to depth at most `min(depth(a), depth(b))`. This keeps
    /// `lca(c, c) = c`.
    pub fn lca(&self, a: &Iri, b: &Iri) -> Result<Iri, ModelError> {
        let cap = self.depth(a)?.min(self.depth(b)?);
        let up_a = self.ancestors(a)?;
        let up_b = self.ancestors(b)?;
        up_a.keys()
            .filter(|c| up_b.contains_key(*c))
            .filter_map(|c| self.depth.get(c).map(|d| (c, *d)))
            .filter(|(_, d)| *d <= cap)
            // Ascending IRI order; only a strictly deeper candidate replaces.
            .fold(None::<(&Iri, usize)>, |best, (c, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((c, d)),
            })
            .map(|(c, _)| c.clone())
            .ok_or_else(|| ModelError::UnknownConcept(a.clone()))
    }

    /// True when one concept is an ancestor of the other (or they are equal).
    pub fn on_broader_path(&self, a: &Iri, b: &Iri) -> bool {
        self.ancestors(a).is_ok_and(|m| m.contains_key(b)) || self.ancestors(b).is_ok_and(|m| m.contains_key(a))
    }
}

/// All structural problems in `t`; empty for a well-formed taxonomy.
pub fn validate_taxonomy(t: &ConceptTaxonomy) -> Vec<Violation> {
    let mut out = Vec::new();
    let on_cycle: Vec<Iri> = t
        .concepts
        .iter()
        .filter(|c| {
            t.parents(c).any(|p| p == *c || bfs(p, &t.broader).contains_key(*c))
        })
        .cloned()
        .collect();
    if !on_cycle.is_empty() {
        out.push(Violation::Cycle(on_cycle));
    }
    for c in &t.concepts {
        if !t.depth.contains_key(c) {
            out.push(Violation::Unreachable(c.clone()));
        }
    }
    for (a, b) in &t.related {
        if a == b {
            out.push(Violation::RelatedReflexive(a.clone()));
        } else if !t.related.contains(&(b.clone(), a.clone())) {
            out.push(Violation::RelatedAsymmetric(a.clone(), b.clone()));
        }
    }
    out
}
