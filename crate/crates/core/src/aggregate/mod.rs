//! Adapters from Twitter, CiteULike and LinkedIn export records to
//! observations and characteristics, plus cross-account identity mapping.

mod adapters;
mod identity;

use std::fmt;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::model::Timestamp;
use crate::rdf::Iri;

pub use adapters::{ingest_citeulike, ingest_linkedin, ingest_twitter, mint_observation_iri, Ingested};
pub use identity::{merge_accounts, resolve_identity, AccountMapping, IdentityError};

pub const TWITTER_SOURCE: &str = "http://twitter.com/";
pub const CITEULIKE_SOURCE: &str = "http://citeulike.org/";
pub const LINKEDIN_SOURCE: &str = "http://linkedin.com/";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct TwitterRecord {
    pub id: u64,
    pub username_iri: Iri,
    pub content: String,
    pub creation_time: Timestamp,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CiteULikeRecord {
    pub user_iri: Iri,
    pub article_iri: Iri,
    #[serde(default)]
    pub tags: Vec<String>,
    pub time: Timestamp,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct LinkedInRecord {
    pub user_iri: Iri,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub workplace_homepage: Option<Iri>,
    #[serde(default)]
    pub interests: Vec<String>,
}

/// A rejected record, by position in its batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordError {
    pub index: usize,
    pub message: String,
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "record {}: {}", self.index, self.message)
    }
}

/// Parses a JSON array of records, keeping every record that deserializes
/// and reporting the rest. A document that is not an array is one error at
/// index 0 with no records.
pub fn parse_records<T: DeserializeOwned>(json: &str) -> (Vec<T>, Vec<RecordError>) {
    let values: Vec<serde_json::Value> = match serde_json::from_str(json) {
        Ok(v) => v,
        Err(e) => {
            return (
                Vec::new(),
                vec![RecordError {
                    index: 0,
                    message: format!("not a JSON array of records: {e}"),
                }],
            )
        }
    };
    let (ok, bad) = records_from_values(values);
    (ok.into_iter().map(|(_, r)| r).collect(), bad)
}

/// Deserializes each value, keeping the batch index of every record.
pub fn records_from_values<T: DeserializeOwned>(values: Vec<serde_json::Value>) -> (Vec<(usize, T)>, Vec<RecordError>) {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (index, v) in values.into_iter().enumerate() {
        match serde_json::from_value(v) {
            Ok(r) => ok.push((index, r)),
            Err(e) => bad.push(RecordError {
                index,
                message: e.to_string(),
            }),
        }
    }
    (ok, bad)
}
