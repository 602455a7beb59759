//! Configuration, the ingest/profile/query engine and its HTTP front end.

mod config;
mod engine;
mod http;

use std::path::Path;

use thiserror::Error;

use crate::modeling::ModelingError;
use crate::query::QueryError;
use crate::rdf::Iri;

pub use config::{Config, DEFAULT_PORT};
pub use engine::{Engine, IngestBatch, IngestReport};
pub use http::{router, serve};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("no data for user <{0}>")]
    UnknownUser(Iri),
    #[error(transparent)]
    Modeling(ModelingError),
}

impl ServiceError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        ServiceError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    /// Process exit status: 1 for usage and configuration problems, 2 for
    /// bad or missing data.
    pub fn exit_code(&self) -> i32 {
        match self {
            ServiceError::Config(_) | ServiceError::Io { .. } => 1,
            _ => 2,
        }
    }
}

impl From<ModelingError> for ServiceError {
    fn from(e: ModelingError) -> Self {
        match e {
            ModelingError::UnknownUser(u) => ServiceError::UnknownUser(u),
            other => ServiceError::Modeling(other),
        }
    }
}
