use std::collections::BTreeMap;

use serde::Deserialize;

use super::text::tokenize;
use super::EnrichError;
use crate::rdf::Iri;

/// Bag-of-words topic classifier scored by cosine similarity.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    topics: BTreeMap<Iri, BTreeMap<String, f64>>,
    threshold: f64,
}

#[derive(Deserialize)]
struct TopicFile {
    #[serde(default = "default_threshold")]
    threshold: f64,
    topics: BTreeMap<String, BTreeMap<String, f64>>,
}

fn default_threshold() -> f64 {
    TopicModel::DEFAULT_THRESHOLD
}

impl TopicModel {
    pub const DEFAULT_THRESHOLD: f64 = 0.25;

    /// Terms are case-folded; each topic needs a positive weight somewhere.
    pub fn new(topics: BTreeMap<Iri, BTreeMap<String, f64>>, threshold: f64) -> Result<Self, EnrichError> {
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(EnrichError::InvalidTopicModel(format!("threshold {threshold} outside (0,1]")));
        }
        let mut folded = BTreeMap::new();
        for (topic, terms) in topics {
            let mut m: BTreeMap<String, f64> = BTreeMap::new();
            for (term, w) in terms {
                if !(w >= 0.0 && w.is_finite()) {
                    return Err(EnrichError::InvalidTopicModel(format!("negative weight for '{term}' in <{topic}>")));
                }
                *m.entry(term.to_lowercase()).or_default() += w;
            }
            if !m.values().any(|w| *w > 0.0) {
                return Err(EnrichError::InvalidTopicModel(format!("<{topic}> has no positive term weight")));
            }
            folded.insert(topic, m);
        }
        Ok(TopicModel {
            topics: folded,
            threshold,
        })
    }

    /// JSON: `{"threshold": 0.25, "topics": {"<iri>": {"term": weight}}}`.
    pub fn from_json(text: &str) -> Result<Self, EnrichError> {
        let f: TopicFile = serde_json::from_str(text).map_err(|e| EnrichError::InvalidTopicModel(e.to_string()))?;
        let mut topics = BTreeMap::new();
        for (k, v) in f.topics {
            let iri = Iri::new(k).map_err(|e| EnrichError::InvalidTopicModel(e.to_string()))?;
            topics.insert(iri, v);
        }
        TopicModel::new(topics, f.threshold)
    }

    pub fn empty() -> Self {
        TopicModel {
            topics: BTreeMap::new(),
            threshold: Self::DEFAULT_THRESHOLD,
        }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn with_threshold(mut self, threshold: f64) -> Result<Self, EnrichError> {
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(EnrichError::InvalidTopicModel(format!("threshold {threshold} outside (0,1]")));
        }
        self.threshold = threshold;
        Ok(self)
    }

    pub fn topics(&self) -> &BTreeMap<Iri, BTreeMap<String, f64>> {
        &self.topics
    }
}

/// Topics whose cosine similarity with the text's term-frequency vector
/// reaches the threshold, by descending score then ascending IRI.
pub fn detect_topics(text: &str, tm: &TopicModel) -> Vec<(Iri, f64)> {
    let mut tf: BTreeMap<String, f64> = BTreeMap::new();
    for t in tokenize(text) {
        *tf.entry(t.folded).or_default() += 1.0;
    }
    let tf_norm = tf.values().map(|v| v * v).sum::<f64>().sqrt();
    if tf_norm == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<(Iri, f64)> = tm
        .topics
        .iter()
        .filter_map(|(topic, weights)| {
            let dot: f64 = weights.iter().map(|(term, w)| w * tf.get(term).copied().unwrap_or(0.0)).sum();
            let w_norm = weights.values().map(|v| v * v).sum::<f64>().sqrt();
            let score = (dot / (tf_norm * w_norm)).clamp(0.0, 1.0);
            (score >= tm.threshold).then(|| (topic.clone(), score))
        })
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(threshold: f64) -> TopicModel {
        TopicModel::from_json(&format!(
            r#"{{"threshold": {threshold}, "topics": {{
                "http://example.org/topic/sports": {{"match": 1.0, "goal": 2.0}},
                "http://example.org/topic/politics": {{"vote": 1.0, "Election": 1.0}}
            }}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn empty_text_scores_nothing() {
        assert!(detect_topics("", &model(0.1)).is_empty());
    }

    #[test]
    fn colinear_vectors_score_one() {
        let mut topics = BTreeMap::new();
        topics.insert(Iri::constant("http://t"), BTreeMap::from([("goal".to_owned(), 1.0)]));
        let tm = TopicModel::new(topics, 0.5).unwrap();
        assert_eq!(detect_topics("goal", &tm), vec![(Iri::constant("http://t"), 1.0)]);
    }

    #[test]
    fn terms_are_case_folded_and_sorted() {
        let got = detect_topics("ELECTION vote goal", &model(0.25));
        assert_eq!(got[0].0.as_str(), "http://example.org/topic/politics");
        assert!((got[0].1 - 2.0 / (3f64.sqrt() * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(TopicModel::from_json(r#"{"topics": {"http://t": {"a": 0.0}}}"#).is_err());
        assert!(TopicModel::from_json(r#"{"threshold": 0, "topics": {}}"#).is_err());
        assert!(TopicModel::from_json(r#"{"topics": {"rel": {"a": 1.0}}}"#).is_err());
    }
}
