use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use super::{BlankNode, Graph, Iri, Literal, Term};
use crate::vocab;

/// Serializes `g` as Turtle using its prefix map.
///
/// Output order is the store order (subject, predicate, object). Blank nodes
/// referenced exactly once as an object are written inline as `[ ... ]`;
/// all others keep a `_:label`.
pub fn serialize_turtle(g: &Graph) -> String {
    let mut out = String::new();
    for (label, ns) in g.prefixes() {
        let _ = writeln!(out, "@prefix {label}: <{}> .", ns.as_str());
    }

    let by_subject = group_by_subject(g);
    let inline = inline_candidates(g, &by_subject);

    let mut first = true;
    for (subject, props) in &by_subject {
        if let Term::BlankNode(b) = subject {
            if inline.contains(b) {
                continue;
            }
        }
        if first {
            if !g.prefixes().is_empty() {
                out.push('\n');
            }
            first = false;
        }
        let writer = Writer {
            prefixes: g.prefixes(),
            by_subject: &by_subject,
            inline: &inline,
        };
        out.push_str(&render_term(subject, Some(g.prefixes())));
        writer.write_properties(&mut out, props, 1);
        out.push_str(" .\n");
    }
    out
}

type Properties<'a> = BTreeMap<&'a Iri, Vec<&'a Term>>;

fn group_by_subject(g: &Graph) -> BTreeMap<&Term, Properties<'_>> {
    let mut map: BTreeMap<&Term, Properties<'_>> = BTreeMap::new();
    for t in g.iter() {
        map.entry(t.subject())
            .or_default()
            .entry(t.predicate())
            .or_default()
            .push(t.object());
    }
    map
}

/// Blank nodes that can be nested inside their single referrer.
fn inline_candidates(g: &Graph, by_subject: &BTreeMap<&Term, Properties<'_>>) -> BTreeSet<BlankNode> {
    let mut refs: HashMap<&BlankNode, (usize, Option<&Term>)> = HashMap::new();
    for t in g.iter() {
        if let Term::BlankNode(b) = t.object() {
            let e = refs.entry(b).or_insert((0, None));
            e.0 += 1;
            e.1 = Some(t.subject());
        }
    }
    let mut inline: BTreeSet<BlankNode> = refs
        .iter()
        .filter(|(b, (n, referrer))| *n == 1 && *referrer != Some(&Term::BlankNode((**b).clone())))
        .map(|(b, _)| (*b).clone())
        .collect();

    // Inline nodes must hang off a written root; break cycles of
    // singly-referenced blanks by promoting their smallest member.
    loop {
        let mut reached: BTreeSet<BlankNode> = BTreeSet::new();
        let mut stack: Vec<&Term> = by_subject
            .keys()
            .copied()
            .filter(|s| !matches!(s, Term::BlankNode(b) if inline.contains(b)))
            .collect();
        while let Some(s) = stack.pop() {
            if let Some(props) = by_subject.get(s) {
                for objects in props.values() {
                    for o in objects {
                        if let Term::BlankNode(b) = o {
                            if inline.contains(b) && reached.insert(b.clone()) {
                                stack.push(o);
                            }
                        }
                    }
                }
            }
        }
        let unreached: Vec<BlankNode> = inline.iter().filter(|b| !reached.contains(*b)).cloned().collect();
        match unreached.first() {
            None => return inline,
            Some(b) => {
                inline.remove(b);
            }
        }
    }
}

struct Writer<'a> {
    prefixes: &'a BTreeMap<String, Iri>,
    by_subject: &'a BTreeMap<&'a Term, Properties<'a>>,
    inline: &'a BTreeSet<BlankNode>,
}

impl Writer<'_> {
    fn write_properties(&self, out: &mut String, props: &Properties<'_>, depth: usize) {
        let indent = "    ".repeat(depth);
        let count = props.len();
        for (i, (predicate, objects)) in props.iter().enumerate() {
            out.push('\n');
            out.push_str(&indent);
            if predicate.as_str() == vocab::RDF_TYPE {
                out.push('a');
            } else {
                out.push_str(&render_iri(predicate, Some(self.prefixes)));
            }
            out.push(' ');
            for (j, object) in objects.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                self.write_object(out, object, depth);
            }
            if i + 1 < count {
                out.push_str(" ;");
            }
        }
    }

    fn write_object(&self, out: &mut String, object: &Term, depth: usize) {
        if let Term::BlankNode(b) = object {
            if self.inline.contains(b) {
                match self.by_subject.get(object) {
                    Some(props) => {
                        out.push('[');
                        self.write_properties(out, props, depth + 1);
                        out.push('\n');
                        out.push_str(&"    ".repeat(depth));
                        out.push(']');
                    }
                    None => out.push_str("[]"),
                }
                return;
            }
        }
        out.push_str(&render_term(object, Some(self.prefixes)));
    }
}

/// Renders a single term in Turtle syntax, abbreviating IRIs with `prefixes`
/// when given.
pub fn render_term(term: &Term, prefixes: Option<&BTreeMap<String, Iri>>) -> String {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes),
        Term::BlankNode(b) => format!("_:{}", b.label()),
        Term::Literal(lit) => render_literal(lit, prefixes),
    }
}

fn render_iri(iri: &Iri, prefixes: Option<&BTreeMap<String, Iri>>) -> String {
    if let Some(prefixes) = prefixes {
        // Longest matching namespace wins; ties go to the smaller label.
        let mut best: Option<(&str, &str)> = None;
        for (label, ns) in prefixes {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                if safe_local(local) && best.is_none_or(|(_, l)| local.len() < l.len()) {
                    best = Some((label, local));
                }
            }
        }
        if let Some((label, local)) = best {
            return format!("{label}:{local}");
        }
    }
    format!("<{}>", iri.as_str())
}

fn safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'),
        _ => false,
    }
}

fn render_literal(lit: &Literal, prefixes: Option<&BTreeMap<String, Iri>>) -> String {
    let lex = lit.lexical();
    if let Some(lang) = lit.language() {
        return format!("{}@{lang}", quote(lex));
    }
    match lit.datatype().as_str() {
        vocab::XSD_STRING => quote(lex),
        vocab::XSD_INTEGER if is_integer_lexical(lex) => lex.to_owned(),
        vocab::XSD_DECIMAL if is_decimal_lexical(lex) => lex.to_owned(),
        vocab::XSD_BOOLEAN if lex == "true" || lex == "false" => lex.to_owned(),
        _ => format!("{}^^{}", quote(lex), render_iri(lit.datatype(), prefixes)),
    }
}

pub(crate) fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

pub(crate) fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    match body.split_once('.') {
        Some((int, frac)) => {
            int.chars().all(|c| c.is_ascii_digit()) && !frac.is_empty() && frac.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// N-Triples style rendering (no prefixes); used for TSV result cells.
pub fn render_term_full(term: &Term) -> String {
    match term {
        Term::Literal(lit) if lit.language().is_none() && lit.datatype().as_str() != vocab::XSD_STRING => {
            format!("{}^^<{}>", quote(lit.lexical()), lit.datatype().as_str())
        }
        other => render_term(other, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{graphs_isomorphic, parse_turtle};

    fn observation_graph() -> Graph {
        let doc = r#"
@prefix gc: <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#> .
@prefix imreal: <http://imreal-project.eu/ns#> .
<http://imreal-project.eu/observation/1>
  gc:user <http://bob.myopenid.com>;
  gc:predicate imreal:accessed;
  gc:object <http://imreal-project.eu/resource/1234567>;
  gc:created "2011-02-15 20:10:30" .
"#;
        parse_turtle(doc, None).unwrap()
    }

    #[test]
    fn empty_graph_serializes_to_prefixes_only() {
        assert_eq!(serialize_turtle(&Graph::new()), "");
        let g = Graph::with_standard_prefixes();
        let text = serialize_turtle(&g);
        assert!(text.lines().all(|l| l.starts_with("@prefix ")));
        assert!(parse_turtle(&text, None).unwrap().is_empty());
    }

    #[test]
    fn observation_uses_prefixes() {
        let text = serialize_turtle(&observation_graph());
        assert!(text.contains("gc:user <http://bob.myopenid.com>"), "{text}");
        assert!(text.contains("gc:predicate imreal:accessed"), "{text}");
    }

    #[test]
    fn nested_blank_nodes_inline() {
        let doc = "@prefix x: <http://x/> .\nx:s x:p [ x:q [ x:r 1 ] ] .";
        let g = parse_turtle(doc, None).unwrap();
        let text = serialize_turtle(&g);
        assert!(!text.contains("_:"), "{text}");
        assert!(graphs_isomorphic(&g, &parse_turtle(&text, None).unwrap()));
    }

    #[test]
    fn blank_cycles_keep_labels() {
        let g = parse_turtle("_:a <http://p> _:b . _:b <http://p> _:a .", None).unwrap();
        let text = serialize_turtle(&g);
        assert!(graphs_isomorphic(&g, &parse_turtle(&text, None).unwrap()), "{text}");
    }

    #[test]
    fn literal_escaping_round_trips() {
        let doc = r#"<http://s> <http://p> "tab\there \"quoted\" back\\slash\nnew" , "\u0001" ."#;
        let g = parse_turtle(doc, None).unwrap();
        let back = parse_turtle(&serialize_turtle(&g), None).unwrap();
        assert_eq!(g.triple_set(), back.triple_set());
    }

    #[test]
    fn serialization_is_deterministic() {
        let g = observation_graph();
        assert_eq!(serialize_turtle(&g), serialize_turtle(&g.clone()));
    }

    #[test]
    fn non_canonical_numeric_lexicals_are_quoted() {
        let dt = Iri::constant(vocab::XSD_INTEGER);
        let lit = Literal::typed("abc", dt);
        assert_eq!(render_literal(&lit, None), format!("\"abc\"^^<{}>", vocab::XSD_INTEGER));
    }
}
