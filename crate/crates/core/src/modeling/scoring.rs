use std::collections::{BTreeMap, BTreeSet};

use super::{decay, DecayParams, ModelingError};
use crate::model::{ConceptTaxonomy, EvidenceItem, EvidenceKind, ModelError, Polarity, SourceRegistry, Timestamp};
use crate::rdf::Iri;
use crate::vocab;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedInterest {
    pub concept: Iri,
    /// In [0,1].
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedKnowledge {
    pub concept: Iri,
    /// In [0,10] on `scale`.
    pub level: f64,
    pub scale: Iri,
    pub inferred: bool,
}

impl WeightedKnowledge {
    pub fn direct(concept: Iri, level: f64) -> Self {
        WeightedKnowledge {
            concept,
            level,
            scale: Iri::constant(vocab::EX_ASCALE),
            inferred: false,
        }
    }
}

/// Everything scoring depends on besides the user and the evidence.
#[derive(Debug, Clone, Copy)]
pub struct ScoringContext<'a> {
    pub registry: &'a SourceRegistry,
    pub taxonomy: &'a ConceptTaxonomy,
    pub as_of: Timestamp,
    pub decay: DecayParams,
    pub alpha: f64,
}

impl<'a> ScoringContext<'a> {
    pub fn new(
        registry: &'a SourceRegistry,
        taxonomy: &'a ConceptTaxonomy,
        as_of: Timestamp,
        decay: DecayParams,
        alpha: f64,
    ) -> Result<Self, ModelingError> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(ModelingError::InvalidAlpha(alpha));
        }
        Ok(ScoringContext {
            registry,
            taxonomy,
            as_of,
            decay,
            alpha,
        })
    }

    /// Items that count for `(user, kind)` at `as_of`: not future-dated, on a
    /// known concept, and for interests positive only.
    fn counts(&self, e: &EvidenceItem, user: &Iri, kind: EvidenceKind) -> bool {
        e.user == *user
            && e.kind == kind
            && e.time <= self.as_of
            && self.taxonomy.contains(&e.concept)
            && !(kind == EvidenceKind::Interest && e.polarity == Polarity::Negative)
    }
}

/// Per-concept sum of `trust × weight × polarity × decay(age)`.
pub fn direct_scores(
    user: &Iri,
    kind: EvidenceKind,
    evidence: &[EvidenceItem],
    cx: &ScoringContext<'_>,
) -> Result<BTreeMap<Iri, f64>, ModelingError> {
    let mut out: BTreeMap<Iri, f64> = BTreeMap::new();
    for e in evidence.iter().filter(|e| cx.counts(e, user, kind)) {
        let age = cx.as_of.seconds_since(e.time) as f64;
        let v = cx.registry.trust(&e.source) * e.weight * e.polarity.sign() * decay(age, &cx.decay)?;
        *out.entry(e.concept.clone()).or_default() += v;
    }
    Ok(out)
}

/// Direct scores plus `alpha^dist` shares from every descendant, for every
/// concept that receives anything.
pub fn raw_scores(
    user: &Iri,
    kind: EvidenceKind,
    evidence: &[EvidenceItem],
    cx: &ScoringContext<'_>,
) -> Result<BTreeMap<Iri, f64>, ModelingError> {
    let direct = direct_scores(user, kind, evidence, cx)?;
    let mut raw: BTreeMap<Iri, f64> = BTreeMap::new();
    for (d, v) in &direct {
        for (a, dist) in cx.taxonomy.ancestors(d)? {
            *raw.entry(a).or_default() += cx.alpha.powi(dist as i32) * v;
        }
    }
    Ok(raw)
}

pub fn raw_score(
    user: &Iri,
    concept: &Iri,
    kind: EvidenceKind,
    evidence: &[EvidenceItem],
    cx: &ScoringContext<'_>,
) -> Result<f64, ModelingError> {
    if !cx.taxonomy.contains(concept) {
        return Err(ModelError::UnknownConcept(concept.clone()).into());
    }
    Ok(raw_scores(user, kind, evidence, cx)?.get(concept).copied().unwrap_or(0.0))
}

/// Positive raw interest scores divided by their maximum, by concept IRI.
pub fn interest_weights(
    user: &Iri,
    evidence: &[EvidenceItem],
    cx: &ScoringContext<'_>,
) -> Result<Vec<WeightedInterest>, ModelingError> {
    let raw = raw_scores(user, EvidenceKind::Interest, evidence, cx)?;
    let max = raw.values().copied().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return Ok(Vec::new());
    }
    Ok(raw
        .into_iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|(concept, v)| WeightedInterest { concept, weight: v / max })
        .collect())
}

/// `10 × (1 − 2^(−max(0, raw)))`.
pub fn knowledge_level(raw: f64) -> f64 {
    10.0 * (1.0 - (-raw.max(0.0)).exp2())
}

/// Levels for concepts with positive raw knowledge, plus level 0 for
/// concepts whose only direct knowledge evidence nets to zero or below.
pub fn knowledge_levels(
    user: &Iri,
    evidence: &[EvidenceItem],
    cx: &ScoringContext<'_>,
) -> Result<Vec<WeightedKnowledge>, ModelingError> {
    let raw = raw_scores(user, EvidenceKind::Knowledge, evidence, cx)?;
    let observed: BTreeSet<&Iri> = evidence
        .iter()
        .filter(|e| cx.counts(e, user, EvidenceKind::Knowledge))
        .map(|e| &e.concept)
        .collect();
    let mut concepts: BTreeSet<&Iri> = raw.iter().filter(|(_, v)| **v > 0.0).map(|(c, _)| c).collect();
    concepts.extend(observed);
    Ok(concepts
        .into_iter()
        .map(|c| WeightedKnowledge::direct(c.clone(), knowledge_level(raw.get(c).copied().unwrap_or(0.0))))
        .collect())
}
