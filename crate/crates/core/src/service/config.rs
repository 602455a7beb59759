use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::ServiceError;
use crate::enrich::{ActivityRule, ActivityTable};
use crate::model::{EvidenceKind, Polarity, SourceRegistry};
use crate::modeling::{DecayParams, ModelParams, SECONDS_PER_DAY};
use crate::rdf::Iri;

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    port: Option<u16>,
    taxonomy_root: String,
    paths: PathsSection,
    #[serde(default)]
    sources: SourcesSection,
    #[serde(default)]
    model: ModelSection,
    #[serde(default)]
    activities: Vec<ActivitySection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathsSection {
    taxonomy: PathBuf,
    gazetteer: PathBuf,
    topics: Option<PathBuf>,
    fixtures: Option<PathBuf>,
    identity_map: Option<PathBuf>,
    store: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourcesSection {
    default_trust: Option<f64>,
    #[serde(default)]
    trust: BTreeMap<String, f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSection {
    half_life_days: Option<f64>,
    alpha: Option<f64>,
    theta: Option<f64>,
    k: Option<usize>,
    topic_threshold: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActivitySection {
    activity: String,
    rules: Vec<RuleSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleSection {
    kind: String,
    polarity: i64,
    weight: f64,
}

/// Validated configuration with paths made absolute against the config
/// file's directory.
#[derive(Debug, Clone)]
pub struct Config {
    pub port: u16,
    pub taxonomy_root: Iri,
    pub taxonomy: PathBuf,
    pub gazetteer: PathBuf,
    pub topics: Option<PathBuf>,
    pub fixtures: Option<PathBuf>,
    pub identity_map: Option<PathBuf>,
    pub store: Option<PathBuf>,
    pub registry: SourceRegistry,
    pub params: ModelParams,
    pub topic_threshold: Option<f64>,
    pub activities: ActivityTable,
}

impl Config {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ServiceError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| ServiceError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base).map_err(|e| match e {
            ServiceError::Config(m) => ServiceError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Parses TOML text; relative paths are resolved against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self, ServiceError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| ServiceError::Config(e.to_string()))?;
        let bad = |m: String| ServiceError::Config(m);
        let abs = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };

        let mut registry = SourceRegistry::new(file.sources.default_trust.unwrap_or(SourceRegistry::DEFAULT_TRUST))
            .map_err(|e| bad(e.to_string()))?;
        for (source, trust) in file.sources.trust {
            let iri = Iri::new(source).map_err(|e| bad(format!("sources.trust: {e}")))?;
            registry.register(iri, trust).map_err(|e| bad(format!("sources.trust: {e}")))?;
        }

        let d = ModelParams::default();
        let m = &file.model;
        let params = ModelParams {
            decay: match m.half_life_days {
                Some(days) => DecayParams::new(days * SECONDS_PER_DAY).map_err(|e| bad(format!("model: {e}")))?,
                None => d.decay,
            },
            alpha: m.alpha.unwrap_or(d.alpha),
            theta: m.theta.unwrap_or(d.theta),
            k: m.k.unwrap_or(d.k),
        };
        params.validate().map_err(|e| bad(format!("model: {e}")))?;
        if let Some(t) = m.topic_threshold {
            if !(t > 0.0 && t <= 1.0) {
                return Err(bad(format!("model: topic_threshold must lie in (0,1], got {t}")));
            }
        }

        let mut activities = ActivityTable::default();
        for a in file.activities {
            let iri = Iri::new(a.activity).map_err(|e| bad(format!("activities: {e}")))?;
            let mut rules = Vec::new();
            for r in a.rules {
                let kind = EvidenceKind::parse(&r.kind).ok_or_else(|| bad(format!("activities: unknown kind '{}'", r.kind)))?;
                let polarity =
                    Polarity::from_sign(r.polarity).ok_or_else(|| bad(format!("activities: polarity must be 1 or -1, got {}", r.polarity)))?;
                rules.push(ActivityRule::new(kind, polarity, r.weight).map_err(|e| bad(format!("activities: {e}")))?);
            }
            activities.set(iri, rules);
        }

        let root = Iri::new(file.taxonomy_root).map_err(|e| bad(format!("taxonomy_root: {e}")))?;
        let p = file.paths;
        Ok(Config {
            port: file.port.unwrap_or(DEFAULT_PORT),
            taxonomy_root: root,
            taxonomy: abs(p.taxonomy),
            gazetteer: abs(p.gazetteer),
            topics: p.topics.map(abs),
            fixtures: p.fixtures.map(abs),
            identity_map: p.identity_map.map(abs),
            store: p.store.map(abs),
            registry,
            params,
            topic_threshold: m.topic_threshold,
            activities,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab;

    const MINIMAL: &str = r#"
taxonomy_root = "http://example.org/Root"
[paths]
taxonomy = "taxonomy.ttl"
gazetteer = "gazetteer.tsv"
"#;

    #[test]
    fn defaults_and_relative_paths() {
        let c = Config::from_toml(MINIMAL, Path::new("/etc/usem")).unwrap();
        assert_eq!(c.port, DEFAULT_PORT);
        assert_eq!(c.taxonomy, PathBuf::from("/etc/usem/taxonomy.ttl"));
        assert_eq!(c.params, ModelParams::default());
        assert_eq!(c.registry.default_trust(), 0.5);
        assert!(c.store.is_none());
    }

    #[test]
    fn overrides() {
        let text = format!(
            r#"{MINIMAL}
[sources]
default_trust = 0.4
[sources.trust]
"http://citeulike.org/" = 0.8
[model]
half_life_days = 7
alpha = 0.25
[[activities]]
activity = "{}"
rules = [{{ kind = "knowledge", polarity = -1, weight = 2.0 }}]
"#,
            vocab::IMREAL_ACCESSED
        );
        let c = Config::from_toml(&text, Path::new("/")).unwrap();
        assert_eq!(c.registry.trust(&Iri::constant("http://citeulike.org/")), 0.8);
        assert_eq!(c.registry.trust(&Iri::constant("http://other/")), 0.4);
        assert_eq!(c.params.alpha, 0.25);
        assert_eq!(c.params.decay.half_life(), 7.0 * SECONDS_PER_DAY);
        let rules = c.activities.rules(&Iri::constant(vocab::IMREAL_ACCESSED)).unwrap();
        assert_eq!(rules[0].polarity, Polarity::Negative);
    }

    #[test]
    fn invalid_values_rejected() {
        for extra in [
            "[sources.trust]\n\"http://a/\" = 1.5\n",
            "[model]\nalpha = 1.0\n",
            "[model]\ntopic_threshold = 2.0\n",
            "unknown = 1\n",
        ] {
            let text = if extra.starts_with('[') { format!("{MINIMAL}{extra}") } else { format!("{extra}{MINIMAL}") };
            assert!(matches!(Config::from_toml(&text, Path::new("/")), Err(ServiceError::Config(_))), "{extra}");
        }
    }
}
