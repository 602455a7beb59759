use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use super::{BlankNode, Graph, Term, Triple};

/// True iff some bijection between blank-node labels maps `a`'s triples onto
/// `b`'s. Prefix maps are ignored.
pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ground_a, blank_a) = split(a);
    let (ground_b, blank_b) = split(b);
    if ground_a != ground_b || blank_a.len() != blank_b.len() {
        return false;
    }
    let colors_a = refine(&blank_a);
    let colors_b = refine(&blank_b);
    if colors_a.len() != colors_b.len() {
        return false;
    }
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for c in colors_a.values() {
        *hist_a.entry(*c).or_default() += 1;
    }
    for c in colors_b.values() {
        *hist_b.entry(*c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }

    // Most constrained nodes first.
    let mut order: Vec<&BlankNode> = colors_a.keys().collect();
    order.sort_by_key(|n| (hist_a[&colors_a[*n]], colors_a[*n], (*n).clone()));

    let target: HashSet<&Triple> = blank_b.iter().collect();
    let mut search = Search {
        order,
        colors_a: &colors_a,
        colors_b: &colors_b,
        triples_a: &blank_a,
        target: &target,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    search.run(0)
}

fn split(g: &Graph) -> (Vec<&Triple>, Vec<Triple>) {
    let mut ground = Vec::new();
    let mut blank = Vec::new();
    for t in g.iter() {
        if t.subject().is_blank() || t.object().is_blank() {
            blank.push(t.clone());
        } else {
            ground.push(t);
        }
    }
    (ground, blank)
}

fn hash_of(v: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Colour refinement over blank nodes: each round folds in the colours of
/// neighbours through the predicates that connect them.
fn refine(triples: &[Triple]) -> HashMap<BlankNode, u64> {
    let mut colors: HashMap<BlankNode, u64> = HashMap::new();
    for t in triples {
        for term in [t.subject(), t.object()] {
            if let Term::BlankNode(b) = term {
                colors.insert(b.clone(), 0);
            }
        }
    }
    let rounds = colors.len().min(8) + 1;
    for _ in 0..rounds {
        let mut sigs: HashMap<BlankNode, Vec<u64>> = HashMap::new();
        for t in triples {
            let s_sig = match t.subject() {
                Term::BlankNode(b) => colors[b],
                other => hash_of(other),
            };
            let o_sig = match t.object() {
                Term::BlankNode(b) => colors[b],
                other => hash_of(other),
            };
            if let Term::BlankNode(b) = t.subject() {
                sigs.entry(b.clone()).or_default().push(hash_of((0u8, t.predicate(), o_sig, t.object().is_blank())));
            }
            if let Term::BlankNode(b) = t.object() {
                sigs.entry(b.clone()).or_default().push(hash_of((1u8, t.predicate(), s_sig, t.subject().is_blank())));
            }
        }
        colors = colors
            .iter()
            .map(|(b, old)| {
                let mut sig = sigs.remove(b).unwrap_or_default();
                sig.sort_unstable();
                (b.clone(), hash_of((old, sig)))
            })
            .collect();
    }
    colors
}

struct Search<'a> {
    order: Vec<&'a BlankNode>,
    colors_a: &'a HashMap<BlankNode, u64>,
    colors_b: &'a HashMap<BlankNode, u64>,
    triples_a: &'a [Triple],
    target: &'a HashSet<&'a Triple>,
    mapping: HashMap<BlankNode, BlankNode>,
    used: HashSet<BlankNode>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let node = self.order[depth];
        let color = self.colors_a[node];
        let mut candidates: Vec<&BlankNode> = self
            .colors_b
            .iter()
            .filter(|(b, c)| **c == color && !self.used.contains(*b))
            .map(|(b, _)| b)
            .collect();
        candidates.sort();
        for cand in candidates {
            self.mapping.insert(node.clone(), cand.clone());
            self.used.insert(cand.clone());
            if self.consistent(node) && self.run(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(cand);
        }
        false
    }

    /// Checks every triple touching `node` whose blanks are all mapped.
    fn consistent(&self, node: &BlankNode) -> bool {
        let map = |t: &Term| -> Option<Term> {
            match t {
                Term::BlankNode(b) => self.mapping.get(b).cloned().map(Term::BlankNode),
                other => Some(other.clone()),
            }
        };
        for t in self.triples_a {
            let touches = t.subject().as_blank() == Some(node) || t.object().as_blank() == Some(node);
            if !touches {
                continue;
            }
            if let (Some(s), Some(o)) = (map(t.subject()), map(t.object())) {
                let image = Triple::new(s, t.predicate().clone(), o).expect("subject stays non-literal");
                if !self.target.contains(&image) {
                    return false;
                }
            }
        }
        true
    }
}
