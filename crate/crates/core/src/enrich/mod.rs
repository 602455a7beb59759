//! Entity extraction and identification, topic detection and resource
//! resolution, turning observations into concept-linked evidence.

mod gazetteer;
mod resolver;
mod text;
mod topics;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{EvidenceItem, EvidenceKind, Observation, Polarity, Timestamp, UserCharacteristic};
use crate::rdf::{Graph, Iri, Triple};
use crate::vocab;

pub use gazetteer::{extract_entities, identify_entity, Gazetteer, Mention, MAX_WINDOW};
pub use resolver::{
    fixture_file_name, ChainResolver, Document, DocumentKind, FixtureResolver, GraphResolver, MapResolver,
    ResourceResolver,
};
pub use text::{find_urls, tokenize, Token};
pub use topics::{detect_topics, TopicModel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnrichError {
    #[error("gazetteer line {0}: {1}")]
    GazetteerLine(usize, String),
    #[error("prior for '{0}' must be in (0,1], got {1}")]
    InvalidPrior(String, f64),
    #[error("surface '{0}' must have 1 to 4 tokens")]
    InvalidSurface(String),
    #[error("gazetteer concept <{0}> is not in the taxonomy")]
    UnknownConcept(Iri),
    #[error("topic model: {0}")]
    InvalidTopicModel(String),
    #[error("resolver index line {0}: {1}")]
    IndexLine(usize, String),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("activity weight must be positive, got {0}")]
    InvalidRule(f64),
}

/// Evidence produced for one identified concept by an activity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActivityRule {
    pub kind: EvidenceKind,
    pub polarity: Polarity,
    pub weight: f64,
}

impl ActivityRule {
    pub fn new(kind: EvidenceKind, polarity: Polarity, weight: f64) -> Result<Self, EnrichError> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(EnrichError::InvalidRule(weight));
        }
        Ok(ActivityRule { kind, polarity, weight })
    }
}

/// Activity IRI to the evidence it yields per concept.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivityTable {
    rules: BTreeMap<Iri, Vec<ActivityRule>>,
}

impl ActivityTable {
    pub fn empty() -> Self {
        ActivityTable { rules: BTreeMap::new() }
    }

    pub fn set(&mut self, activity: Iri, rules: Vec<ActivityRule>) {
        self.rules.insert(activity, rules);
    }

    pub fn rules(&self, activity: &Iri) -> Option<&[ActivityRule]> {
        self.rules.get(activity).map(Vec::as_slice)
    }
}

impl Default for ActivityTable {
    fn default() -> Self {
        use EvidenceKind::{Interest, Knowledge};
        use Polarity::{Negative, Positive};
        let r = |kind, polarity, weight| ActivityRule { kind, polarity, weight };
        let mut t = ActivityTable::empty();
        let mut set = |a: &str, rules: Vec<ActivityRule>| t.set(Iri::constant(a), rules);
        set(vocab::IMREAL_ACCESSED, vec![r(Interest, Positive, 0.5)]);
        set(vocab::IMREAL_POSTED, vec![r(Interest, Positive, 1.0)]);
        set(vocab::IMREAL_BOOKMARKED, vec![r(Knowledge, Positive, 1.0), r(Interest, Positive, 0.5)]);
        set(vocab::IMREAL_TAGGED, vec![r(Knowledge, Positive, 1.0), r(Interest, Positive, 0.5)]);
        set(vocab::IMREAL_ANSWERED_INCORRECTLY, vec![r(Knowledge, Negative, 1.0)]);
        set(vocab::IMREAL_ANSWERED_CORRECTLY, vec![r(Knowledge, Positive, 1.0)]);
        set(vocab::USEM_DECLARED_INTEREST, vec![r(Interest, Positive, 1.0)]);
        t
    }
}

/// Everything enrichment learned about one observation.
#[derive(Debug, Clone, Default)]
pub struct Enrichment {
    pub evidence: Vec<EvidenceItem>,
    /// `usem:mentionsConcept` and `usem:hasTopic` triples on the object.
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Free-function form of [`Enricher::enrich_observation`].
pub fn enrich_observation(
    o: &Observation,
    resolver: &dyn ResourceResolver,
    gazetteer: &Gazetteer,
    topics: &TopicModel,
    activities: &ActivityTable,
    now: Timestamp,
) -> Enrichment {
    Enricher {
        resolver,
        gazetteer,
        topics,
        activities,
    }
    .enrich_observation(o, now)
}

/// Shared read-only inputs of the enrichment step.
pub struct Enricher<'a> {
    pub resolver: &'a dyn ResourceResolver,
    pub gazetteer: &'a Gazetteer,
    pub topics: &'a TopicModel,
    pub activities: &'a ActivityTable,
}

impl Enricher<'_> {
    /// Resolves the observed object (and, for messages, every URL in it),
    /// links entities, detects topics and applies the activity rules.
    /// Evidence is attributed to `o.user`; callers pass the canonical user.
    pub fn enrich_observation(&self, o: &Observation, now: Timestamp) -> Enrichment {
        let mut out = Enrichment {
            graph: Graph::with_standard_prefixes(),
            ..Enrichment::default()
        };
        if o.created > now {
            out.warnings.push(format!("<{}> is dated after {now}; skipped", o.id));
            return out;
        }
        let text = self.gather_text(&o.object, &mut out.warnings);

        let concepts: BTreeSet<Iri> = extract_entities(&text, self.gazetteer).iter().map(identify_entity).collect();
        let p = Iri::constant;
        for c in &concepts {
            out.graph.insert(Triple::spo(&o.object, &p(vocab::USEM_MENTIONS_CONCEPT), c));
        }
        for (topic, _) in detect_topics(&text, self.topics) {
            out.graph.insert(Triple::spo(&o.object, &p(vocab::USEM_HAS_TOPIC), topic));
        }

        match self.activities.rules(&o.activity) {
            Some(rules) => {
                for c in &concepts {
                    for rule in rules {
                        out.evidence.push(EvidenceItem {
                            user: o.user.clone(),
                            concept: c.clone(),
                            kind: rule.kind,
                            polarity: rule.polarity,
                            weight: rule.weight,
                            time: o.created,
                            source: o.source.clone(),
                            origin: o.id.clone(),
                        });
                    }
                }
            }
            None => out.warnings.push(format!("no activity rule for <{}>", o.activity)),
        }
        out
    }

    fn gather_text(&self, object: &Iri, warnings: &mut Vec<String>) -> String {
        let Some(doc) = self.resolver.resolve(object) else {
            warnings.push(format!("could not resolve <{object}>"));
            return String::new();
        };
        let mut parts = vec![doc.text.clone()];
        if doc.kind == DocumentKind::Message {
            for url in find_urls(&doc.text) {
                let resolved = Iri::new(url.as_str()).ok().and_then(|iri| self.resolver.resolve(&iri));
                match resolved {
                    Some(d) => parts.push(d.text),
                    None => warnings.push(format!("could not resolve <{url}> linked from <{object}>")),
                }
            }
        }
        parts.join("\n")
    }

    /// Links a `usem:declaredInterest` characteristic to concepts through the
    /// gazetteer and applies that property's activity rules.
    pub fn enrich_declared_interest(&self, c: &UserCharacteristic, user: &Iri) -> Vec<EvidenceItem> {
        let Some(lit) = c.value.as_literal() else {
            return Vec::new();
        };
        let Some(rules) = self.activities.rules(&c.property) else {
            return Vec::new();
        };
        let concepts: BTreeSet<Iri> = extract_entities(lit.lexical(), self.gazetteer).iter().map(identify_entity).collect();
        let origin = c.claim_iri();
        concepts
            .iter()
            .flat_map(|concept| {
                rules.iter().map(|rule| EvidenceItem {
                    user: user.clone(),
                    concept: concept.clone(),
                    kind: rule.kind,
                    polarity: rule.polarity,
                    weight: rule.weight,
                    time: c.observed_at,
                    source: c.source.clone(),
                    origin: origin.clone(),
                })
            })
            .collect()
    }
}
