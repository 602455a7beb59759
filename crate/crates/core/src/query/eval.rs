use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use super::{Binding, CompareOp, ExactDecimal, FilterExpr, Query, QueryError, QueryPattern, Slot};
use crate::rdf::{render_term_full, Graph, Iri, Term, TriplePattern};
use crate::vocab;

type Solution = HashMap<String, Term>;

/// Evaluates `q` over `g`: natural join of the pattern matches, then filters,
/// projection, ordering by the projected terms, DISTINCT and LIMIT.
pub fn evaluate(q: &Query, g: &Graph) -> Vec<Binding> {
    let mut solutions: Vec<Solution> = vec![Solution::new()];
    for pattern in &q.patterns {
        let mut next = Vec::new();
        for sol in &solutions {
            extend(pattern, sol, g, &mut next);
        }
        solutions = next;
        if solutions.is_empty() {
            break;
        }
    }

    let mut rows: Vec<(Vec<Term>, Binding)> = solutions
        .into_iter()
        .filter(|sol| q.filters.iter().all(|f| filter_passes(f, sol.get(&f.var))))
        .map(|sol| {
            let key: Vec<Term> = q.projected.iter().map(|v| sol[v].clone()).collect();
            let binding = Binding(q.projected.iter().cloned().zip(key.iter().cloned()).collect());
            (key, binding)
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    if q.distinct {
        rows.dedup_by(|a, b| a.0 == b.0);
    }
    if let Some(n) = q.limit {
        rows.truncate(n);
    }
    rows.into_iter().map(|(_, b)| b).collect()
}

fn extend(pattern: &QueryPattern, sol: &Solution, g: &Graph, out: &mut Vec<Solution>) {
    let resolve = |slot: &Slot| -> Option<Term> {
        match slot {
            Slot::Var(v) => sol.get(v).cloned(),
            Slot::Term(t) => Some(t.clone()),
        }
    };
    let predicate = match resolve(&pattern.predicate) {
        Some(Term::Iri(i)) => Some(i),
        Some(_) => return,
        None => None,
    };
    let tp = TriplePattern::new(resolve(&pattern.subject), predicate, resolve(&pattern.object));
    'triples: for t in g.matching(&tp) {
        let mut s = sol.clone();
        let values = [t.subject().clone(), Term::Iri(t.predicate().clone()), t.object().clone()];
        for (slot, value) in pattern.slots().into_iter().zip(values) {
            if let Slot::Var(v) = slot {
                match s.get(v) {
                    Some(existing) if *existing != value => continue 'triples,
                    Some(_) => {}
                    None => {
                        s.insert(v.clone(), value);
                    }
                }
            }
        }
        out.push(s);
    }
}

/// Applies a single comparison. Unbound variables and incomparable operands
/// make the filter false.
pub(crate) fn filter_passes(f: &FilterExpr, value: Option<&Term>) -> bool {
    let Some(value) = value else {
        return false;
    };
    let numeric = |t: &Term| t.as_literal().and_then(ExactDecimal::from_literal);
    let ordering: Option<Ordering> = match (numeric(value), numeric(&f.operand)) {
        (Some(a), Some(b)) => Some(a.cmp(&b)),
        _ => match (value.as_literal(), f.operand.as_literal()) {
            (Some(a), Some(b)) if a.is_plain_string() && b.is_plain_string() => Some(a.lexical().cmp(b.lexical())),
            _ => None,
        },
    };
    match (f.op, ordering) {
        (CompareOp::Eq, Some(o)) => o == Ordering::Equal,
        (CompareOp::Ne, Some(o)) => o != Ordering::Equal,
        (CompareOp::Eq, None) => *value == f.operand,
        (CompareOp::Ne, None) => *value != f.operand,
        (CompareOp::Lt, Some(o)) => o == Ordering::Less,
        (CompareOp::Gt, Some(o)) => o == Ordering::Greater,
        (CompareOp::Le, Some(o)) => o != Ordering::Greater,
        (CompareOp::Ge, Some(o)) => o != Ordering::Less,
        (_, None) => false,
    }
}

/// Tab-separated results: a `?var` header row, then one row per binding with
/// terms in N-Triples syntax.
pub fn to_tsv(q: &Query, rows: &[Binding]) -> String {
    let mut out = q.projected.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = q
            .projected
            .iter()
            .map(|v| row.get(v).map(render_term_full).unwrap_or_default())
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// Source-prioritized characteristics of `user`.
///
/// For each characteristic property, only claims from the highest-ranked
/// source in `source_priority` that has any claim are considered; among those
/// the most recently observed wins, then the smallest value. Claims from
/// sources not in the list are ignored. Bindings carry `property`, `value`
/// and `source`, ordered by property.
pub fn profile_query(user: &Iri, source_priority: &[Iri], g: &Graph) -> Result<Vec<Binding>, QueryError> {
    if source_priority.is_empty() {
        return Err(QueryError::EmptyPriority);
    }
    let var = |v: &str| Slot::Var(v.to_owned());
    let pred = |p: &str| Slot::Term(Term::Iri(Iri::constant(p)));
    let q = Query::new(
        ["property", "value", "source", "observed"].map(String::from).to_vec(),
        true,
        vec![
            QueryPattern::new(var("c"), pred(vocab::USEM_USER), Slot::Term(Term::Iri(user.clone()))),
            QueryPattern::new(var("c"), pred(vocab::USEM_PROPERTY), var("property")),
            QueryPattern::new(var("c"), pred(vocab::USEM_VALUE), var("value")),
            QueryPattern::new(var("c"), pred(vocab::USEM_SOURCE), var("source")),
            QueryPattern::new(var("c"), pred(vocab::USEM_OBSERVED_AT), var("observed")),
        ],
        Vec::new(),
        None,
    )?;
    let rank: HashMap<&Iri, usize> = source_priority.iter().enumerate().rev().map(|(i, s)| (s, i)).collect();

    // property -> (rank, observed, value, source); smaller key wins.
    let mut best: BTreeMap<Term, (usize, std::cmp::Reverse<String>, Term, Term)> = BTreeMap::new();
    for row in evaluate(&q, g) {
        let Some(r) = row.iri("source").and_then(|s| rank.get(s)) else {
            continue;
        };
        let observed = row.get("observed").and_then(Term::as_literal).map(|l| l.lexical().to_owned()).unwrap_or_default();
        // Timestamps share one fixed-width format, so lexical order is time order.
        let candidate = (*r, std::cmp::Reverse(observed), row.get("value").unwrap().clone(), row.get("source").unwrap().clone());
        let property = row.get("property").unwrap().clone();
        match best.get(&property) {
            Some(current) if *current <= candidate => {}
            _ => {
                best.insert(property, candidate);
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|(property, (_, _, value, source))| {
            Binding(BTreeMap::from([
                ("property".to_owned(), property),
                ("value".to_owned(), value),
                ("source".to_owned(), source),
            ]))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::query::parse_sparql;
    use crate::rdf::{parse_turtle, Literal, Triple};

    const OBS1: &str = r#"
@prefix gc: <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#> .
@prefix imreal: <http://imreal-project.eu/ns#> .
<http://imreal-project.eu/observation/1>
  gc:user <http://bob.myopenid.com>;
  gc:predicate imreal:accessed;
  gc:object <http://imreal-project.eu/resource/1234567>;
  gc:created "2011-02-15 20:10:30" .
"#;

    #[test]
    fn observation_user_query() {
        let g = parse_turtle(OBS1, None).unwrap();
        let q = parse_sparql("PREFIX gc: <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#>\nSELECT ?u WHERE { ?o gc:user ?u }").unwrap();
        let rows = evaluate(&q, &g);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].iri("u").unwrap().as_str(), "http://bob.myopenid.com");
        assert_eq!(to_tsv(&q, &rows), "?u\n<http://bob.myopenid.com>\n");
    }

    #[test]
    fn empty_graph_and_empty_where() {
        let q = parse_sparql("SELECT ?s { ?s ?p ?o }").unwrap();
        assert!(evaluate(&q, &Graph::new()).is_empty());
        let q = parse_sparql("SELECT * { }").unwrap();
        assert_eq!(evaluate(&q, &Graph::new()), vec![Binding::default()]);
    }

    #[test]
    fn numeric_filters_compare_exactly() {
        let g = parse_turtle("<http://a> <http://v> 10 . <http://b> <http://v> 10.0 . <http://c> <http://v> 9.99 .", None).unwrap();
        let q = parse_sparql("SELECT ?s { ?s <http://v> ?v FILTER(?v = 10) }").unwrap();
        let got: Vec<_> = evaluate(&q, &g).iter().map(|b| b.iri("s").unwrap().as_str().to_owned()).collect();
        assert_eq!(got, vec!["http://a", "http://b"]);
        let q = parse_sparql("SELECT ?s { ?s <http://v> ?v FILTER(?v < 10) }").unwrap();
        assert_eq!(evaluate(&q, &g).len(), 1);
    }

    #[test]
    fn string_ordering_and_incomparable_operands() {
        let g = parse_turtle("<http://a> <http://n> \"alice\" . <http://b> <http://n> \"bob\" . <http://c> <http://n> <http://x> .", None).unwrap();
        let q = parse_sparql("SELECT ?s { ?s <http://n> ?n FILTER(?n >= \"b\") }").unwrap();
        assert_eq!(evaluate(&q, &g).len(), 1);
        let q = parse_sparql("SELECT ?s { ?s <http://n> ?n FILTER(?n != \"bob\") }").unwrap();
        assert_eq!(evaluate(&q, &g).len(), 2);
    }

    #[test]
    fn distinct_and_limit() {
        let g = parse_turtle("<http://a> <http://p> 1, 2, 3 . <http://b> <http://p> 1 .", None).unwrap();
        let all = evaluate(&parse_sparql("SELECT ?s { ?s <http://p> ?o }").unwrap(), &g);
        assert_eq!(all.len(), 4);
        let distinct = evaluate(&parse_sparql("SELECT DISTINCT ?s { ?s <http://p> ?o }").unwrap(), &g);
        assert_eq!(distinct.len(), 2);
        let limited = evaluate(&parse_sparql("SELECT ?s { ?s <http://p> ?o } LIMIT 3").unwrap(), &g);
        assert_eq!(limited, all[..3].to_vec());
    }

    #[test]
    fn repeated_variable_within_pattern() {
        let g = parse_turtle("<http://a> <http://p> <http://a> . <http://a> <http://p> <http://b> .", None).unwrap();
        let q = parse_sparql("SELECT ?x { ?x <http://p> ?x }").unwrap();
        assert_eq!(evaluate(&q, &g).len(), 1);
    }

    fn claim(g: &mut Graph, id: &str, property: &str, value: &str, source: &str, at: &str) {
        let c = Iri::new(format!("urn:usem:claim:{id}")).unwrap();
        let user = Iri::constant("http://bob.myopenid.com");
        let p = |s: &str| Iri::constant(s);
        g.insert(Triple::spo(&c, &p(vocab::USEM_USER), user));
        g.insert(Triple::spo(&c, &p(vocab::USEM_PROPERTY), p(property)));
        g.insert(Triple::spo(&c, &p(vocab::USEM_VALUE), Literal::string(value)));
        g.insert(Triple::spo(&c, &p(vocab::USEM_SOURCE), p(source)));
        g.insert(Triple::spo(&c, &p(vocab::USEM_OBSERVED_AT), Literal::string(at)));
    }

    #[test]
    fn priority_picks_highest_ranked_source() {
        let mut g = Graph::new();
        claim(&mut g, "1", vocab::FOAF_NAME, "Bob A", "http://a", "2011-02-15 10:00:00");
        claim(&mut g, "2", vocab::FOAF_NAME, "Bob B", "http://b", "2011-02-15 09:00:00");
        let user = Iri::constant("http://bob.myopenid.com");
        let rows = profile_query(&user, &[Iri::constant("http://b"), Iri::constant("http://a")], &g).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].get("value").unwrap(), &Term::Literal(Literal::string("Bob B")));
        let rows = profile_query(&user, &[Iri::constant("http://a")], &g).unwrap();
        assert_eq!(rows[0].get("value").unwrap(), &Term::Literal(Literal::string("Bob A")));
        assert_eq!(profile_query(&user, &[], &g), Err(QueryError::EmptyPriority));
    }
}
