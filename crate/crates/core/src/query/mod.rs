//! SELECT/DISTINCT/BGP/FILTER/LIMIT subset of SPARQL.

mod decimal;
mod eval;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rdf::{Iri, SyntaxError, Term};

pub use decimal::ExactDecimal;
pub use eval::{evaluate, profile_query, to_tsv};
pub use parser::parse_sparql;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unsupported SPARQL keyword {keyword} at {line}:{column}")]
    Unsupported {
        keyword: String,
        line: usize,
        column: usize,
    },
    #[error("projected variable ?{0} does not occur in any pattern")]
    UnboundProjection(String),
    #[error("source priority list is empty")]
    EmptyPriority,
}

/// One position of a query triple pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slot {
    Var(String),
    Term(Term),
}

impl Slot {
    pub fn var(&self) -> Option<&str> {
        match self {
            Slot::Var(v) => Some(v),
            Slot::Term(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryPattern {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

impl QueryPattern {
    pub fn new(subject: Slot, predicate: Slot, object: Slot) -> Self {
        QueryPattern {
            subject,
            predicate,
            object,
        }
    }

    pub fn slots(&self) -> [&Slot; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl CompareOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
            CompareOp::Lt => "<",
            CompareOp::Gt => ">",
            CompareOp::Le => "<=",
            CompareOp::Ge => ">=",
        }
    }
}

/// `FILTER(?var op operand)` where the operand is a literal or IRI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterExpr {
    pub var: String,
    pub op: CompareOp,
    pub operand: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub projected: Vec<String>,
    pub distinct: bool,
    pub patterns: Vec<QueryPattern>,
    pub filters: Vec<FilterExpr>,
    pub limit: Option<usize>,
}

impl Query {
    /// Builds a query, checking that every projected variable is bound by
    /// some pattern.
    pub fn new(
        projected: Vec<String>,
        distinct: bool,
        patterns: Vec<QueryPattern>,
        filters: Vec<FilterExpr>,
        limit: Option<usize>,
    ) -> Result<Self, QueryError> {
        for v in &projected {
            let bound = patterns.iter().any(|p| p.slots().iter().any(|s| s.var() == Some(v)));
            if !bound {
                return Err(QueryError::UnboundProjection(v.clone()));
            }
        }
        Ok(Query {
            projected,
            distinct,
            patterns,
            filters,
            limit,
        })
    }
}

/// Variable name to term, restricted to the query's projection.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binding(pub BTreeMap<String, Term>);

impl Binding {
    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn iri(&self, var: &str) -> Option<&Iri> {
        self.get(var).and_then(Term::as_iri)
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "?{k}={v}")?;
        }
        Ok(())
    }
}
