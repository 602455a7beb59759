#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use usem_core::service::{Config, Engine, IngestBatch};

pub const BOB: &str = "http://bob.myopenid.com";

pub fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/scenario")
}

pub fn read(name: &str) -> String {
    fs::read_to_string(scenario_dir().join(name)).unwrap()
}

pub fn config() -> Config {
    Config::load(scenario_dir().join("config.toml")).unwrap()
}

pub fn engine() -> Engine {
    Engine::from_config(&config()).unwrap()
}

fn records(name: &str) -> Vec<serde_json::Value> {
    serde_json::from_str(&read(name)).unwrap()
}

/// Tweet, bookmark, LinkedIn profile and the resource-access observation.
pub fn scenario_batch() -> IngestBatch {
    IngestBatch {
        twitter: records("twitter.json"),
        citeulike: records("citeulike.json"),
        linkedin: records("linkedin.json"),
        turtle: vec![read("observations.ttl")],
    }
}

/// Writes a copy of the scenario config into `dir` with absolute fixture
/// paths and a store file, returning the config path.
pub fn config_with_store(dir: &std::path::Path) -> PathBuf {
    let s = scenario_dir();
    let mut text = read("config.toml");
    for name in ["taxonomy.ttl", "gazetteer.tsv", "topics.json", "identity.tsv"] {
        text = text.replace(&format!("\"{name}\""), &format!("{:?}", s.join(name)));
    }
    text = text.replace("\"resources\"", &format!("{:?}\nstore = {:?}", s.join("resources"), dir.join("store.ttl")));
    let path = dir.join("config.toml");
    fs::write(&path, text).unwrap();
    path
}
