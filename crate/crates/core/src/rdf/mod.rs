//! RDF data model, in-memory graph store and the Turtle subset used for all
//! input and output.
//!
//! Terms order as `Iri < BlankNode < Literal` and then lexicographically; the
//! store, the serializer and the query engine all rely on that order for
//! reproducible output.

mod graph;
mod iso;
pub(crate) mod lexer;
mod serialize;
pub(crate) mod turtle;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vocab;

pub use graph::Graph;
pub use iso::graphs_isomorphic;
pub use serialize::{render_term, render_term_full, serialize_turtle};
pub use turtle::parse_turtle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("not an absolute IRI: {0:?}")]
    RelativeIri(String),
    #[error("IRI contains a forbidden character: {0:?}")]
    InvalidIri(String),
    #[error("invalid blank node label: {0:?}")]
    InvalidBlankLabel(String),
    #[error("invalid language tag: {0:?}")]
    InvalidLanguageTag(String),
    #[error("invalid prefix label: {0:?}")]
    InvalidPrefix(String),
    #[error("a literal cannot be the subject of a triple")]
    LiteralSubject,
}

/// Syntax error raised by the Turtle and SPARQL parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if !is_absolute(&value) {
            return Err(RdfError::RelativeIri(value));
        }
        if value.chars().any(forbidden_in_iri) {
            return Err(RdfError::InvalidIri(value));
        }
        Ok(Iri(value))
    }

    /// Builds `ns + local`; the caller guarantees the namespace is absolute.
    pub fn from_parts(ns: &str, local: &str) -> Self {
        Iri::new(vocab::term(ns, local)).expect("namespace constants are absolute IRIs")
    }

    /// Builds an IRI from a known-good constant. Panics if it is not absolute.
    pub fn constant(value: &str) -> Self {
        Iri::new(value).expect("IRI constant must be absolute")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Smallest possible value under the derived ordering; used for range scans.
    pub(crate) fn min_value() -> Self {
        Iri(String::new())
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Iri {
    type Error = RdfError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> String {
        iri.0
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// True when `s` starts with a URI scheme followed by ':'.
pub fn is_absolute(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.') {
            return false;
        }
    }
    false
}

fn forbidden_in_iri(c: char) -> bool {
    c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

/// A blank node label, local to the graph that holds it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, RdfError> {
        let label = label.into();
        let mut chars = label.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            }
            _ => false,
        };
        if ok {
            Ok(BlankNode(label))
        } else {
            Err(RdfError::InvalidBlankLabel(label))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// A literal: lexical form, datatype and optional language tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    pub fn string(value: impl Into<String>) -> Self {
        Literal {
            lexical: value.into(),
            datatype: Iri(vocab::XSD_STRING.to_owned()),
            language: None,
        }
    }

    /// A typed literal. Use [`Literal::lang`] for language-tagged strings.
    pub fn typed(value: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: value.into(),
            datatype,
            language: None,
        }
    }

    pub fn lang(value: impl Into<String>, tag: impl Into<String>) -> Result<Self, RdfError> {
        let tag = tag.into();
        if !valid_language_tag(&tag) {
            return Err(RdfError::InvalidLanguageTag(tag));
        }
        Ok(Literal {
            lexical: value.into(),
            datatype: Iri(vocab::RDF_LANG_STRING.to_owned()),
            language: Some(tag),
        })
    }

    pub fn integer(value: i64) -> Self {
        Literal::typed(value.to_string(), Iri(vocab::XSD_INTEGER.to_owned()))
    }

    /// An `xsd:decimal` literal holding the shortest decimal form of `value`.
    ///
    /// Panics on non-finite input.
    pub fn decimal(value: f64) -> Self {
        assert!(value.is_finite(), "decimal literal from non-finite value");
        let mut lexical = format!("{value}");
        if !lexical.contains('.') {
            lexical.push_str(".0");
        }
        Literal::typed(lexical, Iri(vocab::XSD_DECIMAL.to_owned()))
    }

    pub fn boolean(value: bool) -> Self {
        Literal::typed(value.to_string(), Iri(vocab::XSD_BOOLEAN.to_owned()))
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// Plain string: `xsd:string` without a language tag.
    pub fn is_plain_string(&self) -> bool {
        self.language.is_none() && self.datatype.as_str() == vocab::XSD_STRING
    }

    /// Numeric value of `xsd:integer`/`xsd:decimal` literals.
    pub fn as_f64(&self) -> Option<f64> {
        match self.datatype.as_str() {
            vocab::XSD_INTEGER | vocab::XSD_DECIMAL => self.lexical.parse().ok(),
            _ => None,
        }
    }
}

pub(crate) fn valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// An RDF term. Variant order defines the term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNode> {
        match self {
            Term::BlankNode(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub(crate) fn min_value() -> Self {
        Term::Iri(Iri::min_value())
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<&Iri> for Term {
    fn from(iri: &Iri) -> Self {
        Term::Iri(iri.clone())
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self, None))
    }
}

/// A subject-predicate-object statement. The subject is never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, RdfError> {
        let subject = subject.into();
        if matches!(subject, Term::Literal(_)) {
            return Err(RdfError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    /// Triple with an IRI subject; cannot fail.
    pub fn spo(subject: &Iri, predicate: &Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: Term::Iri(subject.clone()),
            predicate: predicate.clone(),
            object: object.into(),
        }
    }

    /// Triple with a blank-node subject; cannot fail.
    pub fn bpo(subject: &BlankNode, predicate: &Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: Term::BlankNode(subject.clone()),
            predicate: predicate.clone(),
            object: object.into(),
        }
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub(crate) fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }
}

/// A pattern over stored triples; `None` slots match anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: Option<Term>,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
}

impl TriplePattern {
    pub fn new(subject: Option<Term>, predicate: Option<Iri>, object: Option<Term>) -> Self {
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    pub fn any() -> Self {
        TriplePattern::default()
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.subject.as_ref().is_none_or(|s| s == t.subject())
            && self.predicate.as_ref().is_none_or(|p| p == t.predicate())
            && self.object.as_ref().is_none_or(|o| o == t.object())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absolute_iri_detection() {
        assert!(is_absolute("http://bob.myopenid.com"));
        assert!(is_absolute("urn:usem:x"));
        assert!(!is_absolute("bob"));
        assert!(!is_absolute("/relative/path"));
        assert!(!is_absolute("1http:x"));
        assert!(Iri::new("http://a b").is_err());
    }

    #[test]
    fn term_order_is_iri_blank_literal() {
        let iri = Term::Iri(Iri::new("http://z").unwrap());
        let blank = Term::BlankNode(BlankNode::new("a").unwrap());
        let lit = Term::Literal(Literal::string("a"));
        assert!(iri < blank && blank < lit);
    }

    #[test]
    fn language_tag_implies_lang_string_datatype() {
        let l = Literal::lang("Bob", "en").unwrap();
        assert_eq!(l.datatype().as_str(), vocab::RDF_LANG_STRING);
        assert!(Literal::lang("x", "not a tag").is_err());
        assert!(Literal::string("x").language().is_none());
    }

    #[test]
    fn decimal_literal_always_has_a_point() {
        assert_eq!(Literal::decimal(10.0).lexical(), "10.0");
        assert_eq!(Literal::decimal(0.25).lexical(), "0.25");
        assert_eq!(Literal::decimal(-3.0).lexical(), "-3.0");
    }

    #[test]
    fn literal_subject_rejected() {
        let p = Iri::new("http://p").unwrap();
        assert_eq!(
            Triple::new(Literal::string("x"), p, Literal::string("y")).unwrap_err(),
            RdfError::LiteralSubject
        );
    }
}
