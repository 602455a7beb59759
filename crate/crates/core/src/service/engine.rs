use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::{Config, ServiceError};
use crate::aggregate::{
    ingest_citeulike, ingest_linkedin, ingest_twitter, records_from_values, AccountMapping, CiteULikeRecord, LinkedInRecord,
    RecordError, TwitterRecord, CITEULIKE_SOURCE, LINKEDIN_SOURCE, TWITTER_SOURCE,
};
use crate::enrich::{ChainResolver, Enricher, FixtureResolver, Gazetteer, GraphResolver, ResourceResolver, TopicModel};
use crate::enrich::ActivityTable;
use crate::model::{
    characteristic_to_graph, evidence_to_graph, is_characteristic_property, observation_to_graph, observations_in_graph,
    ConceptTaxonomy, Observation, SourceRegistry, Timestamp, UserCharacteristic,
};
use crate::modeling::{build_profile, discover_skos_related, profile_to_graph, ModelParams, ProfileData};
use crate::query::{evaluate, parse_sparql, to_tsv};
use crate::rdf::{parse_turtle, serialize_turtle, Graph, Iri, Term};
use crate::vocab;

/// One ingest request: adapter records as JSON values and Turtle documents
/// holding observations, `foaf:Person` descriptions and resource triples.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IngestBatch {
    #[serde(default)]
    pub twitter: Vec<serde_json::Value>,
    #[serde(default)]
    pub citeulike: Vec<serde_json::Value>,
    #[serde(default)]
    pub linkedin: Vec<serde_json::Value>,
    #[serde(default)]
    pub turtle: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub observations: usize,
    pub characteristics: usize,
    pub evidence: usize,
    pub warnings: Vec<String>,
}

/// Loaded domain knowledge plus the mutable store.
pub struct Engine {
    taxonomy: ConceptTaxonomy,
    gazetteer: Gazetteer,
    topics: TopicModel,
    fixtures: Option<FixtureResolver>,
    identity: AccountMapping,
    registry: SourceRegistry,
    params: ModelParams,
    activities: ActivityTable,
    store_path: Option<PathBuf>,
    store: RwLock<Graph>,
}

fn read(path: &PathBuf) -> Result<String, ServiceError> {
    fs::read_to_string(path).map_err(|e| ServiceError::io(path, e))
}

fn record_warnings(adapter: &str, errors: impl IntoIterator<Item = RecordError>, out: &mut Vec<String>) {
    out.extend(errors.into_iter().map(|e| format!("{adapter} {e}")));
}

/// Maps adapter error indices (positions among parsed records) back to
/// batch positions.
fn reindex(errors: Vec<RecordError>, positions: &[usize]) -> Vec<RecordError> {
    errors
        .into_iter()
        .map(|e| RecordError {
            index: positions[e.index],
            message: e.message,
        })
        .collect()
}

impl Engine {
    /// Loads every file the config references; the store starts from the
    /// snapshot when one exists.
    pub fn from_config(c: &Config) -> Result<Self, ServiceError> {
        let cfg = |what: &str, e: &dyn std::fmt::Display| ServiceError::Config(format!("{what}: {e}"));
        let tg = parse_turtle(&read(&c.taxonomy)?, None).map_err(|e| cfg(&c.taxonomy.display().to_string(), &e))?;
        let taxonomy = ConceptTaxonomy::from_graph(&tg, &c.taxonomy_root).map_err(|e| cfg("taxonomy", &e))?;
        let gazetteer = Gazetteer::from_tsv(&read(&c.gazetteer)?).map_err(|e| cfg("gazetteer", &e))?;
        gazetteer.check_against(&taxonomy).map_err(|e| cfg("gazetteer", &e))?;
        let mut topics = match &c.topics {
            Some(p) => TopicModel::from_json(&read(p)?).map_err(|e| cfg("topics", &e))?,
            None => TopicModel::empty(),
        };
        if let Some(t) = c.topic_threshold {
            topics = topics.with_threshold(t).map_err(|e| cfg("topics", &e))?;
        }
        for topic in topics.topics().keys() {
            if !taxonomy.contains(topic) {
                return Err(cfg("topics", &format!("topic <{topic}> is not in the taxonomy")));
            }
        }
        let fixtures = match &c.fixtures {
            Some(dir) => Some(FixtureResolver::open(dir).map_err(|e| cfg("fixtures", &e))?),
            None => None,
        };
        let identity = match &c.identity_map {
            Some(p) => AccountMapping::from_tsv(&read(p)?).map_err(|e| cfg("identity map", &e))?,
            None => AccountMapping::new(),
        };
        let store = match &c.store {
            Some(p) if p.exists() => {
                parse_turtle(&read(p)?, None).map_err(|e| ServiceError::Data(format!("{}: {e}", p.display())))?
            }
            _ => Graph::with_standard_prefixes(),
        };
        Ok(Engine {
            taxonomy,
            gazetteer,
            topics,
            fixtures,
            identity,
            registry: c.registry.clone(),
            params: c.params,
            activities: c.activities.clone(),
            store_path: c.store.clone(),
            store: RwLock::new(store),
        })
    }

    pub fn taxonomy(&self) -> &ConceptTaxonomy {
        &self.taxonomy
    }

    pub fn identity(&self) -> &AccountMapping {
        &self.identity
    }

    pub fn triple_count(&self) -> usize {
        self.store.read().expect("store lock").len()
    }

    pub fn store_snapshot(&self) -> Graph {
        self.store.read().expect("store lock").clone()
    }

    pub fn store_turtle(&self) -> String {
        serialize_turtle(&self.store.read().expect("store lock"))
    }

    /// Writes the store snapshot when the config names one. Returns whether
    /// anything was written.
    pub fn save(&self) -> Result<bool, ServiceError> {
        let Some(path) = &self.store_path else {
            return Ok(false);
        };
        fs::write(path, self.store_turtle()).map_err(|e| ServiceError::io(path, e))?;
        Ok(true)
    }

    /// Adapters, identity resolution, enrichment, then one commit.
    pub fn ingest(&self, batch: &IngestBatch) -> Result<IngestReport, ServiceError> {
        let mut report = IngestReport::default();
        let warnings = &mut report.warnings;
        let mut observations: Vec<Observation> = Vec::new();
        let mut claims: Vec<UserCharacteristic> = Vec::new();
        let mut resources = Graph::with_standard_prefixes();

        let (tw, bad) = records_from_values::<TwitterRecord>(batch.twitter.clone());
        record_warnings("twitter", bad, warnings);
        let (tw_pos, tw): (Vec<usize>, Vec<TwitterRecord>) = tw.into_iter().unzip();
        let out = ingest_twitter(&tw, &Iri::constant(TWITTER_SOURCE));
        record_warnings("twitter", reindex(out.errors, &tw_pos), warnings);
        observations.extend(out.observations);
        resources.extend_verbatim(&out.graph);

        let (cu, bad) = records_from_values::<CiteULikeRecord>(batch.citeulike.clone());
        record_warnings("citeulike", bad, warnings);
        let (cu_pos, cu): (Vec<usize>, Vec<CiteULikeRecord>) = cu.into_iter().unzip();
        let out = ingest_citeulike(&cu, &Iri::constant(CITEULIKE_SOURCE));
        record_warnings("citeulike", reindex(out.errors, &cu_pos), warnings);
        observations.extend(out.observations);
        resources.extend_verbatim(&out.graph);

        let mut persons: Vec<(Iri, Vec<(Iri, Term)>)> = Vec::new();
        for (n, doc) in batch.turtle.iter().enumerate() {
            let g = parse_turtle(doc, None).map_err(|e| ServiceError::Data(format!("turtle document {n}: {e}")))?;
            let (obs, bad) = observations_in_graph(&g);
            warnings.extend(bad.into_iter().map(|(iri, e)| format!("turtle document {n}: <{iri}>: {e}")));
            let mut consumed: BTreeSet<Term> = obs.iter().map(|o| Term::Iri(o.id.clone())).collect();
            let person = Term::Iri(Iri::constant(vocab::FOAF_PERSON));
            for s in g.subjects(&Iri::constant(vocab::RDF_TYPE), Some(&person)) {
                let Term::Iri(user) = &s else { continue };
                let fields: Vec<(Iri, Term)> = g
                    .iter()
                    .filter(|t| t.subject() == &s && is_characteristic_property(t.predicate()))
                    .map(|t| (t.predicate().clone(), t.object().clone()))
                    .collect();
                persons.push((user.clone(), fields));
                consumed.insert(s.clone());
            }
            let mut rest = Graph::new();
            for t in g.iter().filter(|t| !consumed.contains(t.subject())) {
                rest.insert(t.clone());
            }
            resources.merge(&rest);
            observations.extend(obs);
        }

        // Explicit characteristics carry no time of their own; they are dated
        // to the newest event in the batch, else the newest in the store.
        let batch_latest = observations.iter().map(|o| o.created).max();
        let now = match batch_latest {
            Some(t) => t,
            None => ProfileData::from_graph(&self.store.read().expect("store lock")).latest().unwrap_or(Timestamp::EPOCH),
        };

        let (li, bad) = records_from_values::<LinkedInRecord>(batch.linkedin.clone());
        record_warnings("linkedin", bad, warnings);
        let (li_pos, li): (Vec<usize>, Vec<LinkedInRecord>) = li.into_iter().unzip();
        let (chars, errors) = ingest_linkedin(&li, &Iri::constant(LINKEDIN_SOURCE), now);
        record_warnings("linkedin", reindex(errors, &li_pos), warnings);
        claims.extend(chars);
        for (user, fields) in persons {
            let source = Observation::implied_source(&user, None);
            for (property, value) in fields {
                claims.extend(UserCharacteristic::new(user.clone(), property, value, source.clone(), now));
            }
        }

        for c in &mut claims {
            c.user = self.identity.resolve(&c.user);
        }

        let mut commit = Graph::new();
        let resolver_graph = {
            let mut g = self.store.read().expect("store lock").clone();
            g.extend_verbatim(&resources);
            GraphResolver::new(g)
        };
        let mut chain: Vec<&dyn ResourceResolver> = vec![&resolver_graph];
        if let Some(f) = &self.fixtures {
            chain.push(f);
        }
        let resolver = ChainResolver::new(chain);
        let enricher = Enricher {
            resolver: &resolver,
            gazetteer: &self.gazetteer,
            topics: &self.topics,
            activities: &self.activities,
        };
        let enrich_now = batch_latest.unwrap_or(now);
        let mut evidence = Vec::new();
        for o in &observations {
            commit.extend_verbatim(&observation_to_graph(o));
            let mut canonical = o.clone();
            canonical.user = self.identity.resolve(&o.user);
            let e = enricher.enrich_observation(&canonical, enrich_now);
            evidence.extend(e.evidence);
            commit.extend_verbatim(&e.graph);
            warnings.extend(e.warnings);
        }
        for c in &claims {
            commit.extend_verbatim(&characteristic_to_graph(c));
            evidence.extend(enricher.enrich_declared_interest(c, &c.user));
        }
        commit.extend_verbatim(&evidence_to_graph(&evidence));
        commit.extend_verbatim(&resources);

        report.observations = observations.len();
        report.characteristics = claims.len();
        report.evidence = evidence.len();
        self.store.write().expect("store lock").extend_verbatim(&commit);
        Ok(report)
    }

    /// Latest evidence time in the store, else the latest claim time, else
    /// the epoch.
    pub fn default_as_of(&self) -> Timestamp {
        let data = ProfileData::from_graph(&self.store.read().expect("store lock"));
        data.evidence
            .iter()
            .map(|e| e.time)
            .max()
            .or_else(|| data.latest())
            .unwrap_or(Timestamp::EPOCH)
    }

    /// Profile Turtle for `user`, resolved to its canonical IRI first.
    pub fn profile_turtle(&self, user: &Iri, as_of: Option<Timestamp>) -> Result<String, ServiceError> {
        let user = self.identity.resolve(user);
        let as_of = match as_of {
            Some(t) => t,
            None => self.default_as_of(),
        };
        let data = ProfileData::from_graph(&self.store.read().expect("store lock"));
        let profile = build_profile(&user, &data, &self.registry, &self.taxonomy, as_of, &self.params)?;
        Ok(serialize_turtle(&profile_to_graph(&profile)))
    }

    pub fn query_tsv(&self, text: &str) -> Result<String, ServiceError> {
        let q = parse_sparql(text)?;
        let rows = evaluate(&q, &self.store.read().expect("store lock"));
        Ok(to_tsv(&q, &rows))
    }

    /// Candidate `skos:related` pairs from co-occurrence in stored evidence.
    pub fn discover(&self, k: Option<usize>) -> Result<Vec<(Iri, Iri)>, ServiceError> {
        let data = ProfileData::from_graph(&self.store.read().expect("store lock"));
        Ok(discover_skos_related(&data.evidence, &self.taxonomy, k.unwrap_or(self.params.k))?)
    }
}
