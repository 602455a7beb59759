use std::collections::HashMap;

use super::graph::valid_prefix_label;
use super::lexer::{Lexer, Tok, Token};
use super::{is_absolute, valid_language_tag, BlankNode, Graph, Iri, Literal, SyntaxError, Term, Triple};
use crate::vocab;

/// Parses a Turtle document into a fresh graph.
///
/// Supported: `@prefix`/`@base` (and the SPARQL-style `PREFIX`/`BASE`),
/// prefixed names, IRIs, `a`, string/integer/decimal/boolean literals, typed
/// and language-tagged literals, labeled and anonymous blank nodes, predicate
/// lists and object lists. Collections and exponent numerals are rejected.
/// Document blank-node labels are replaced by fresh graph-local labels.
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<Graph, SyntaxError> {
    let tokens = Lexer::new(text, false).tokenize()?;
    let mut parser = TurtleParser {
        tokens,
        pos: 0,
        base: base.map(|b| b.as_str().to_owned()),
        prefixes: HashMap::new(),
        blanks: HashMap::new(),
        graph: Graph::new(),
    };
    parser.document()?;
    Ok(parser.graph)
}

struct TurtleParser {
    tokens: Vec<Token>,
    pos: usize,
    base: Option<String>,
    prefixes: HashMap<String, String>,
    blanks: HashMap<String, BlankNode>,
    graph: Graph,
}

impl TurtleParser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: token.line,
            column: token.column,
            message: message.into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> SyntaxError {
        self.error_at(&self.tokens[self.pos], message)
    }

    fn expect_punct(&mut self, p: &'static str) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Punct(p) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected '{p}', found {}", describe(self.peek()))))
        }
    }

    fn document(&mut self) -> Result<(), SyntaxError> {
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(()),
                Tok::At(word) if word == "prefix" => {
                    self.next();
                    self.prefix_directive()?;
                    self.expect_punct(".")?;
                }
                Tok::At(word) if word == "base" => {
                    self.next();
                    self.base_directive()?;
                    self.expect_punct(".")?;
                }
                Tok::Word(word) if word.eq_ignore_ascii_case("prefix") => {
                    self.next();
                    self.prefix_directive()?;
                }
                Tok::Word(word) if word.eq_ignore_ascii_case("base") => {
                    self.next();
                    self.base_directive()?;
                }
                _ => {
                    self.triples()?;
                    self.expect_punct(".")?;
                }
            }
        }
    }

    fn prefix_directive(&mut self) -> Result<(), SyntaxError> {
        let tok = self.next();
        let label = match &tok.tok {
            Tok::PName(label, local) if local.is_empty() && valid_prefix_label(label) => label.clone(),
            other => return Err(self.error_at(&tok, format!("expected prefix label, found {}", describe(other)))),
        };
        let iri_tok = self.next();
        let Tok::IriRef(raw) = &iri_tok.tok else {
            return Err(self.error_at(&iri_tok, "expected IRI after prefix label"));
        };
        let ns = self.resolve(raw, &iri_tok)?;
        self.graph
            .set_prefix(&label, ns.clone())
            .map_err(|e| self.error_at(&tok, e.to_string()))?;
        self.prefixes.insert(label, ns.as_str().to_owned());
        Ok(())
    }

    fn base_directive(&mut self) -> Result<(), SyntaxError> {
        let tok = self.next();
        let Tok::IriRef(raw) = &tok.tok else {
            return Err(self.error_at(&tok, "expected IRI after base"));
        };
        let iri = self.resolve(raw, &tok)?;
        self.base = Some(iri.as_str().to_owned());
        Ok(())
    }

    fn resolve(&self, raw: &str, tok: &Token) -> Result<Iri, SyntaxError> {
        let resolved = if is_absolute(raw) {
            raw.to_owned()
        } else {
            let Some(base) = &self.base else {
                return Err(self.error_at(tok, format!("relative IRI <{raw}> with no base")));
            };
            let base_url = url::Url::parse(base)
                .map_err(|e| self.error_at(tok, format!("cannot resolve <{raw}> against base <{base}>: {e}")))?;
            base_url
                .join(raw)
                .map_err(|e| self.error_at(tok, format!("cannot resolve <{raw}> against base <{base}>: {e}")))?
                .to_string()
        };
        Iri::new(resolved).map_err(|e| self.error_at(tok, e.to_string()))
    }

    fn pname(&self, prefix: &str, local: &str, tok: &Token) -> Result<Iri, SyntaxError> {
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(self.error_at(tok, format!("unknown prefix '{prefix}:'")));
        };
        Iri::new(format!("{ns}{local}")).map_err(|e| self.error_at(tok, e.to_string()))
    }

    fn iri(&mut self) -> Result<Iri, SyntaxError> {
        let tok = self.next();
        match &tok.tok {
            Tok::IriRef(raw) => self.resolve(raw, &tok),
            Tok::PName(p, l) => self.pname(p, l, &tok),
            other => Err(self.error_at(&tok, format!("expected IRI, found {}", describe(other)))),
        }
    }

    fn blank_for_label(&mut self, label: &str) -> BlankNode {
        if let Some(b) = self.blanks.get(label) {
            return b.clone();
        }
        let fresh = self.graph.fresh_blank();
        self.blanks.insert(label.to_owned(), fresh.clone());
        fresh
    }

    fn triples(&mut self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Punct("[") {
            let subject = self.blank_property_list()?;
            if *self.peek() != Tok::Punct(".") {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::IriRef(_) | Tok::PName(..) => Ok(Term::Iri(self.iri()?)),
            Tok::BlankLabel(label) => {
                self.next();
                Ok(Term::BlankNode(self.blank_for_label(&label)))
            }
            Tok::Punct("(") => Err(self.error_here("RDF collections are not supported")),
            other => Err(self.error_here(format!("expected subject, found {}", describe(&other)))),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), SyntaxError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            if *self.peek() != Tok::Punct(";") {
                return Ok(());
            }
            while *self.peek() == Tok::Punct(";") {
                self.next();
            }
            if matches!(self.peek(), Tok::Punct(".") | Tok::Punct("]") | Tok::Eof) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, SyntaxError> {
        if *self.peek() == Tok::Word("a".into()) {
            self.next();
            return Ok(Iri::constant(vocab::RDF_TYPE));
        }
        match self.peek() {
            Tok::IriRef(_) | Tok::PName(..) => self.iri(),
            other => Err(self.error_here(format!("expected predicate, found {}", describe(other)))),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri) -> Result<(), SyntaxError> {
        loop {
            let object = self.object()?;
            let triple = Triple::new(subject.clone(), predicate.clone(), object)
                .map_err(|e| self.error_here(e.to_string()))?;
            self.graph.insert(triple);
            if *self.peek() == Tok::Punct(",") {
                self.next();
            } else {
                return Ok(());
            }
        }
    }

    fn blank_property_list(&mut self) -> Result<Term, SyntaxError> {
        self.expect_punct("[")?;
        let node = Term::BlankNode(self.graph.fresh_blank());
        if *self.peek() != Tok::Punct("]") {
            self.predicate_object_list(&node)?;
        }
        self.expect_punct("]")?;
        Ok(node)
    }

    fn object(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::IriRef(_) | Tok::PName(..) => Ok(Term::Iri(self.iri()?)),
            Tok::BlankLabel(label) => {
                self.next();
                Ok(Term::BlankNode(self.blank_for_label(&label)))
            }
            Tok::Punct("[") => self.blank_property_list(),
            Tok::Punct("(") => Err(self.error_here("RDF collections are not supported")),
            Tok::Str(value) => {
                self.next();
                match self.peek().clone() {
                    Tok::At(tag) => {
                        let tok = self.next();
                        if !valid_language_tag(&tag) {
                            return Err(self.error_at(&tok, format!("invalid language tag '{tag}'")));
                        }
                        Ok(Term::Literal(Literal::lang(value, tag).map_err(|e| self.error_at(&tok, e.to_string()))?))
                    }
                    Tok::DoubleCaret => {
                        self.next();
                        let datatype = self.iri()?;
                        if datatype.as_str() == vocab::RDF_LANG_STRING {
                            return Err(self.error_here("rdf:langString literal requires a language tag"));
                        }
                        Ok(Term::Literal(Literal::typed(value, datatype)))
                    }
                    _ => Ok(Term::Literal(Literal::string(value))),
                }
            }
            Tok::Integer(lex) => {
                self.next();
                Ok(Term::Literal(Literal::typed(lex, Iri::constant(vocab::XSD_INTEGER))))
            }
            Tok::Decimal(lex) => {
                self.next();
                Ok(Term::Literal(Literal::typed(lex, Iri::constant(vocab::XSD_DECIMAL))))
            }
            Tok::Word(w) if w == "true" || w == "false" => {
                self.next();
                Ok(Term::Literal(Literal::typed(w, Iri::constant(vocab::XSD_BOOLEAN))))
            }
            other => Err(self.error_here(format!("expected object, found {}", describe(&other)))),
        }
    }
}

pub(crate) fn describe(tok: &Tok) -> String {
    match tok {
        Tok::IriRef(i) => format!("<{i}>"),
        Tok::PName(p, l) => format!("'{p}:{l}'"),
        Tok::BlankLabel(l) => format!("'_:{l}'"),
        Tok::Var(v) => format!("'?{v}'"),
        Tok::Str(_) => "string literal".into(),
        Tok::Integer(n) | Tok::Decimal(n) => format!("number {n}"),
        Tok::At(w) => format!("'@{w}'"),
        Tok::Word(w) => format!("'{w}'"),
        Tok::DoubleCaret => "'^^'".into(),
        Tok::Punct(p) => format!("'{p}'"),
        Tok::Eof => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::TriplePattern;

    const PROFILE: &str = r#"
@prefix foaf: <http://xmlns.com/foaf/0.1/> .
@prefix usem: <http://wis.ewi.tudelft.nl/rdf/usem#> .
@prefix wi: <http://purl.org/ontology/wi/core#> .
@prefix wo: <http://purl.org/ontology/wo/core#> .
@prefix dbpedia: <http://dbpedia.org/resource/> .
@prefix ex: <http://example.org/> .

<http://bob.myopenid.com>
   a foaf:Person ;
   foaf:name "Bob";
   usem:knowledge [
      a usem:WeightedKnowledge ;
      wi:topic dbpedia:Psychology ;
      wo:weight [
         a wo:Weight ;
         wo:weight_value 10.0 ;
         wo:scale ex:AScale
         ]
      ] .
"#;

    #[test]
    fn profile_listing_parses_with_decimal_weight() {
        let g = parse_turtle(PROFILE, None).unwrap();
        assert_eq!(g.len(), 9);
        let p = Iri::new("http://purl.org/ontology/wo/core#weight_value").unwrap();
        let hits = g.matching(&TriplePattern::new(None, Some(p), None));
        assert_eq!(hits.len(), 1);
        let lit = hits[0].object().as_literal().unwrap();
        assert_eq!(lit.lexical(), "10.0");
        assert_eq!(lit.datatype().as_str(), vocab::XSD_DECIMAL);
    }

    #[test]
    fn unclosed_listing_is_rejected() {
        let broken = PROFILE.replace("]\n      ] .", "] .");
        assert!(parse_turtle(&broken, None).is_err());
    }

    #[test]
    fn empty_document() {
        assert!(parse_turtle("", None).unwrap().is_empty());
        assert!(parse_turtle("# only a comment\n", None).unwrap().is_empty());
    }

    #[test]
    fn relative_iri_needs_base() {
        let err = parse_turtle("<a> <http://p> <b> .", None).unwrap_err();
        assert!(err.message.contains("no base"), "{err}");
        let base = Iri::new("http://ex.org/dir/").unwrap();
        let g = parse_turtle("<a> <http://p> <../b> .", Some(&base)).unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject().as_iri().unwrap().as_str(), "http://ex.org/dir/a");
        assert_eq!(t.object().as_iri().unwrap().as_str(), "http://ex.org/b");
    }

    #[test]
    fn base_directive_applies() {
        let g = parse_turtle("@base <http://ex.org/> .\n<s> <p> <o> .", None).unwrap();
        assert_eq!(g.iter().next().unwrap().predicate().as_str(), "http://ex.org/p");
    }

    #[test]
    fn unknown_prefix_reports_position() {
        let err = parse_turtle("\n  nope:a <http://p> 1 .", None).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown prefix"));
    }

    #[test]
    fn literals_of_every_supported_kind() {
        let doc = r#"@prefix x: <http://x/> .
x:s x:p "plain", "hi"@en-GB, "5"^^x:t, 42, -0.5, true, 'single', """long
text""" ."#;
        let g = parse_turtle(doc, None).unwrap();
        assert_eq!(g.len(), 8);
        let langs: Vec<_> = g
            .iter()
            .filter_map(|t| t.object().as_literal())
            .filter_map(|l| l.language().map(str::to_owned))
            .collect();
        assert_eq!(langs, vec!["en-GB".to_owned()]);
    }

    #[test]
    fn blank_labels_share_identity_within_a_document() {
        let g = parse_turtle("_:x <http://p> _:y . _:y <http://p> _:x . [] <http://q> [] .", None).unwrap();
        let blanks: std::collections::BTreeSet<_> = g
            .iter()
            .flat_map(|t| [t.subject().clone(), t.object().clone()])
            .filter(Term::is_blank)
            .collect();
        assert_eq!(blanks.len(), 4);
    }

    #[test]
    fn collections_and_exponents_rejected() {
        assert!(parse_turtle("<http://s> <http://p> ( 1 2 ) .", None).is_err());
        assert!(parse_turtle("<http://s> <http://p> 1e5 .", None).is_err());
    }

    #[test]
    fn trailing_semicolon_allowed() {
        let g = parse_turtle("<http://s> <http://p> 1 ; .", None).unwrap();
        assert_eq!(g.len(), 1);
    }
}
