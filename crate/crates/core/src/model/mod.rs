//! Typed views over the graph: observations, characteristics, taxonomy,
//! sources, scales and evidence.

mod characteristic;
mod evidence;
mod observation;
mod sources;
mod taxonomy;
mod time;

use thiserror::Error;

use crate::rdf::Iri;

pub use characteristic::{
    characteristic_to_graph, characteristics_from_graph, is_characteristic_property, UserCharacteristic,
};
pub use evidence::{evidence_from_graph, evidence_to_graph, EvidenceItem, EvidenceKind, Polarity};
pub use observation::{observation_from_graph, observation_to_graph, observations_in_graph, Observation};
pub use sources::{Scale, SourceRegistry};
pub use taxonomy::{validate_taxonomy, ConceptTaxonomy, TaxonomyBuilder, Violation};
pub use time::Timestamp;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("<{subject}> has no {property}")]
    MissingField { subject: String, property: String },
    #[error("<{subject}> has conflicting values for {property}")]
    Conflicting { subject: String, property: String },
    #[error("{property} of <{subject}> must be an IRI")]
    NotAnIri { subject: String, property: String },
    #[error("invalid timestamp '{0}' (expected YYYY-MM-DD HH:MM:SS)")]
    InvalidTimestamp(String),
    #[error("observation timestamp must be non-zero")]
    ZeroTimestamp,
    #[error("unknown concept <{0}>")]
    UnknownConcept(Iri),
    #[error("<{0}> is not a characteristic property")]
    NotCharacteristic(Iri),
    #[error("trust value {0} outside [0,1]")]
    InvalidTrust(f64),
    #[error("default trust {0} outside (0,1)")]
    InvalidDefaultTrust(f64),
    #[error("scale minimum {min} is not below maximum {max}")]
    InvalidScale { min: f64, max: f64 },
    #[error("evidence weight must be positive, got {0}")]
    InvalidWeight(f64),
    #[error("invalid taxonomy: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Taxonomy(Vec<Violation>),
}
