use std::collections::BTreeMap;

use super::{CompareOp, FilterExpr, Query, QueryError, QueryPattern, Slot};
use crate::rdf::lexer::{Lexer, Tok, Token};
use crate::rdf::turtle::describe;
use crate::rdf::{valid_language_tag, Iri, Literal, SyntaxError, Term};
use crate::vocab;

const UNSUPPORTED: &[&str] = &[
    "OPTIONAL", "UNION", "ORDER", "CONSTRUCT", "ASK", "DESCRIBE", "GRAPH", "MINUS", "BIND", "VALUES",
    "SERVICE", "GROUP", "HAVING", "OFFSET", "FROM", "INSERT", "DELETE", "BASE",
];

/// Parses the supported query grammar:
/// `PREFIX* SELECT DISTINCT? (?v+ | *) WHERE? { patterns, FILTERs } (LIMIT n)?`.
pub fn parse_sparql(text: &str) -> Result<Query, QueryError> {
    let tokens = Lexer::new(text, true).tokenize()?;
    // Bare words only ever appear as keywords, so an unsupported one is
    // reported by name wherever it occurs.
    if let Some(err) = tokens.iter().find_map(QueryParser::unsupported) {
        return Err(err);
    }
    let mut p = QueryParser {
        tokens,
        pos: 0,
        prefixes: BTreeMap::new(),
        blank_vars: 0,
    };
    p.query()
}

struct QueryParser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, Iri>,
    blank_vars: usize,
}

impl QueryParser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(token: &Token, message: impl Into<String>) -> QueryError {
        QueryError::Syntax(SyntaxError {
            line: token.line,
            column: token.column,
            message: message.into(),
        })
    }

    fn unexpected(&self, expected: &str) -> QueryError {
        let t = self.peek();
        if let Some(err) = Self::unsupported(t) {
            return err;
        }
        Self::error_at(t, format!("expected {expected}, found {}", describe(&t.tok)))
    }

    fn unsupported(t: &Token) -> Option<QueryError> {
        if let Tok::Word(w) = &t.tok {
            let upper = w.to_ascii_uppercase();
            if UNSUPPORTED.contains(&upper.as_str()) {
                let keyword = if upper == "ORDER" || upper == "GROUP" {
                    format!("{upper} BY")
                } else {
                    upper
                };
                return Some(QueryError::Unsupported {
                    keyword,
                    line: t.line,
                    column: t.column,
                });
            }
        }
        None
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w.eq_ignore_ascii_case(kw))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.keyword(kw) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(kw))
        }
    }

    fn punct(&self, p: &str) -> bool {
        matches!(self.peek().tok, Tok::Punct(q) if q == p)
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), QueryError> {
        if self.punct(p) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{p}'")))
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        while self.keyword("PREFIX") {
            self.next();
            let t = self.next();
            let Tok::PName(label, local) = &t.tok else {
                return Err(Self::error_at(&t, "expected prefix label"));
            };
            if !local.is_empty() {
                return Err(Self::error_at(&t, "prefix label must end with ':'"));
            }
            let ns = self.iri()?;
            self.prefixes.insert(label.clone(), ns);
        }

        self.expect_keyword("SELECT")?;
        let distinct = if self.keyword("DISTINCT") {
            self.next();
            true
        } else {
            false
        };
        let mut projected = Vec::new();
        let mut star = false;
        if self.punct("*") {
            self.next();
            star = true;
        } else {
            while let Tok::Var(v) = &self.peek().tok {
                if !projected.contains(v) {
                    projected.push(v.clone());
                }
                self.next();
            }
            if projected.is_empty() {
                return Err(self.unexpected("variable or '*'"));
            }
        }

        if self.keyword("WHERE") {
            self.next();
        }
        self.expect_punct("{")?;
        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        loop {
            if self.punct("}") {
                self.next();
                break;
            }
            if self.punct(".") {
                self.next();
                continue;
            }
            if self.keyword("FILTER") {
                self.next();
                filters.push(self.filter()?);
                continue;
            }
            self.triples_block(&mut patterns)?;
        }

        let mut limit = None;
        if self.keyword("LIMIT") {
            self.next();
            let t = self.next();
            match &t.tok {
                Tok::Integer(n) if !n.starts_with(['+', '-']) => {
                    limit = Some(n.parse().map_err(|_| Self::error_at(&t, "LIMIT out of range"))?);
                }
                other => return Err(Self::error_at(&t, format!("expected LIMIT count, found {}", describe(other)))),
            }
        }
        if self.peek().tok != Tok::Eof {
            return Err(self.unexpected("end of query"));
        }

        if star {
            for p in &patterns {
                for s in p.slots() {
                    if let Some(v) = s.var() {
                        if !v.starts_with('_') && !projected.iter().any(|x| x == v) {
                            projected.push(v.to_owned());
                        }
                    }
                }
            }
        }
        Query::new(projected, distinct, patterns, filters, limit)
    }

    /// `subject verb object (',' object)* (';' verb object ...)* '.'?`
    fn triples_block(&mut self, out: &mut Vec<QueryPattern>) -> Result<(), QueryError> {
        let subject = self.slot(false)?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.slot(true)?;
                out.push(QueryPattern::new(subject.clone(), predicate.clone(), object));
                if self.punct(",") {
                    self.next();
                } else {
                    break;
                }
            }
            if self.punct(";") {
                self.next();
                if self.punct(".") || self.punct("}") {
                    break;
                }
            } else {
                break;
            }
        }
        if !self.punct("}") && !self.keyword("FILTER") {
            self.expect_punct(".")?;
        }
        Ok(())
    }

    fn verb(&mut self) -> Result<Slot, QueryError> {
        if self.keyword("a") && matches!(&self.peek().tok, Tok::Word(w) if w == "a") {
            self.next();
            return Ok(Slot::Term(Term::Iri(Iri::constant(vocab::RDF_TYPE))));
        }
        match &self.peek().tok {
            Tok::Var(_) => self.slot(false),
            Tok::IriRef(_) | Tok::PName(..) => Ok(Slot::Term(Term::Iri(self.iri()?))),
            _ => Err(self.unexpected("predicate")),
        }
    }

    fn slot(&mut self, allow_literal: bool) -> Result<Slot, QueryError> {
        match self.peek().tok.clone() {
            Tok::Var(v) => {
                self.next();
                Ok(Slot::Var(v))
            }
            Tok::BlankLabel(label) => {
                // Blank nodes in patterns act as non-projectable variables.
                self.next();
                Ok(Slot::Var(format!("_:{label}")))
            }
            Tok::Punct("[") => {
                let t = self.next();
                if !self.punct("]") {
                    return Err(Self::error_at(&t, "only empty '[]' is supported in patterns"));
                }
                self.next();
                self.blank_vars += 1;
                Ok(Slot::Var(format!("_:anon{}", self.blank_vars)))
            }
            Tok::IriRef(_) | Tok::PName(..) => Ok(Slot::Term(Term::Iri(self.iri()?))),
            _ if allow_literal => Ok(Slot::Term(self.literal()?)),
            _ => Err(self.unexpected("subject")),
        }
    }

    fn iri(&mut self) -> Result<Iri, QueryError> {
        let t = self.next();
        match &t.tok {
            Tok::IriRef(raw) => Iri::new(raw.as_str()).map_err(|e| Self::error_at(&t, e.to_string())),
            Tok::PName(prefix, local) => match self.prefixes.get(prefix) {
                Some(ns) => Iri::new(format!("{}{local}", ns.as_str())).map_err(|e| Self::error_at(&t, e.to_string())),
                None => Err(Self::error_at(&t, format!("unknown prefix '{prefix}:'"))),
            },
            other => Err(Self::error_at(&t, format!("expected IRI, found {}", describe(other)))),
        }
    }

    fn literal(&mut self) -> Result<Term, QueryError> {
        let t = self.next();
        let lit = match &t.tok {
            Tok::Str(value) => match self.peek().tok.clone() {
                Tok::At(tag) => {
                    let tt = self.next();
                    if !valid_language_tag(&tag) {
                        return Err(Self::error_at(&tt, format!("invalid language tag '{tag}'")));
                    }
                    Literal::lang(value.clone(), tag).map_err(|e| Self::error_at(&tt, e.to_string()))?
                }
                Tok::DoubleCaret => {
                    self.next();
                    Literal::typed(value.clone(), self.iri()?)
                }
                _ => Literal::string(value.clone()),
            },
            Tok::Integer(n) => Literal::typed(n.clone(), Iri::constant(vocab::XSD_INTEGER)),
            Tok::Decimal(n) => Literal::typed(n.clone(), Iri::constant(vocab::XSD_DECIMAL)),
            Tok::Word(w) if w == "true" || w == "false" => Literal::typed(w.clone(), Iri::constant(vocab::XSD_BOOLEAN)),
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("object"));
            }
        };
        Ok(Term::Literal(lit))
    }

    fn filter(&mut self) -> Result<FilterExpr, QueryError> {
        self.expect_punct("(")?;
        let t = self.next();
        let Tok::Var(var) = &t.tok else {
            return Err(Self::error_at(&t, format!("expected variable in FILTER, found {}", describe(&t.tok))));
        };
        let op_tok = self.next();
        let op = match op_tok.tok {
            Tok::Punct("=") => CompareOp::Eq,
            Tok::Punct("!=") => CompareOp::Ne,
            Tok::Punct("<") => CompareOp::Lt,
            Tok::Punct(">") => CompareOp::Gt,
            Tok::Punct("<=") => CompareOp::Le,
            Tok::Punct(">=") => CompareOp::Ge,
            ref other => return Err(Self::error_at(&op_tok, format!("expected comparison operator, found {}", describe(other)))),
        };
        let operand = match &self.peek().tok {
            Tok::IriRef(_) | Tok::PName(..) => Term::Iri(self.iri()?),
            _ => self.literal()?,
        };
        self.expect_punct(")")?;
        Ok(FilterExpr {
            var: var.clone(),
            op,
            operand,
        })
    }
}
