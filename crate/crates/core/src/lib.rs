//! Semantic user modeling: RDF store, SPARQL subset, enrichment, aggregation
//! and profile construction.

pub mod rdf;
pub mod vocab;
pub mod query;
pub mod mint;
pub mod model;
pub mod enrich;
pub mod aggregate;
pub mod modeling;
pub mod service;
