use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, NaiveDateTime};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

const FORMAT: &str = "%Y-%m-%d %H:%M:%S";

/// UTC instant with one-second resolution, written `YYYY-MM-DD HH:MM:SS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(i64);

impl Timestamp {
    pub const EPOCH: Timestamp = Timestamp(0);

    pub fn from_epoch_seconds(secs: i64) -> Self {
        Timestamp(secs)
    }

    pub fn epoch_seconds(self) -> i64 {
        self.0
    }

    /// Parses `YYYY-MM-DD HH:MM:SS` as UTC. A `T` separator and a trailing
    /// `Z` are also accepted.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        let trimmed = s.trim();
        let normalized = trimmed.strip_suffix('Z').unwrap_or(trimmed).replacen('T', " ", 1);
        NaiveDateTime::parse_from_str(&normalized, FORMAT)
            .map(|dt| Timestamp(dt.and_utc().timestamp()))
            .map_err(|_| ModelError::InvalidTimestamp(s.to_owned()))
    }

    /// Seconds from `earlier` to `self`.
    pub fn seconds_since(self, earlier: Timestamp) -> i64 {
        self.0 - earlier.0
    }

    pub fn plus_seconds(self, secs: i64) -> Self {
        Timestamp(self.0 + secs)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match DateTime::from_timestamp(self.0, 0) {
            Some(dt) => write!(f, "{}", dt.format(FORMAT)),
            None => write!(f, "@{}", self.0),
        }
    }
}

impl FromStr for Timestamp {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Timestamp::parse(s)
    }
}

impl Serialize for Timestamp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Timestamp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Timestamp::parse(&s).map_err(serde::de::Error::custom)
    }
}
