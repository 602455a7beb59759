//! Turns evidence and claims into profiles: decayed and propagated scores,
//! interest weights, knowledge levels, claim resolution, similarity-based
//! inference and FOAF/wi/wo/usem output.

mod infer;
mod profile;
mod resolve;
mod scoring;

use thiserror::Error;

use crate::model::ModelError;
use crate::rdf::Iri;

pub use infer::{discover_skos_related, infer_related_knowledge, wu_palmer};
pub use profile::{build_profile, emit_profile, knowledge_entries, profile_to_graph, ProfileData, UserProfile};
pub use resolve::resolve_characteristic;
pub use scoring::{
    direct_scores, interest_weights, knowledge_level, knowledge_levels, raw_score, raw_scores, ScoringContext,
    WeightedInterest, WeightedKnowledge,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelingError {
    #[error("negative age {0}s; evidence must not postdate as_of")]
    NegativeDelta(f64),
    #[error("half-life must be positive and finite, got {0}")]
    InvalidHalfLife(f64),
    #[error("alpha must lie in [0,1), got {0}")]
    InvalidAlpha(f64),
    #[error("theta must lie in (0,1], got {0}")]
    InvalidTheta(f64),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("no claims to resolve")]
    EmptyClaims,
    #[error("claims mix different users or properties")]
    MixedClaims,
    #[error("no data for user <{0}>")]
    UnknownUser(Iri),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub const SECONDS_PER_DAY: f64 = 86_400.0;

/// Exponential forgetting with a fixed half-life, in seconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    half_life: f64,
}

impl DecayParams {
    pub const DEFAULT_HALF_LIFE: f64 = 30.0 * SECONDS_PER_DAY;

    pub fn new(half_life_seconds: f64) -> Result<Self, ModelingError> {
        if !(half_life_seconds > 0.0 && half_life_seconds.is_finite()) {
            return Err(ModelingError::InvalidHalfLife(half_life_seconds));
        }
        Ok(DecayParams {
            half_life: half_life_seconds,
        })
    }

    pub fn half_life(&self) -> f64 {
        self.half_life
    }
}

impl Default for DecayParams {
    fn default() -> Self {
        DecayParams {
            half_life: Self::DEFAULT_HALF_LIFE,
        }
    }
}

/// `2^(-delta / half_life)`.
pub fn decay(delta_seconds: f64, p: &DecayParams) -> Result<f64, ModelingError> {
    if delta_seconds < 0.0 || delta_seconds.is_nan() {
        return Err(ModelingError::NegativeDelta(delta_seconds));
    }
    Ok((-delta_seconds / p.half_life).exp2())
}

/// Tunable modeling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub decay: DecayParams,
    /// Upward propagation factor per broader step.
    pub alpha: f64,
    /// Minimum similarity for inferred knowledge.
    pub theta: f64,
    /// Minimum co-occurring observations for a discovered relation.
    pub k: usize,
}

impl ModelParams {
    pub const DEFAULT_ALPHA: f64 = 0.5;
    pub const DEFAULT_THETA: f64 = 0.5;
    pub const DEFAULT_K: usize = 3;

    pub fn validate(&self) -> Result<(), ModelingError> {
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(ModelingError::InvalidAlpha(self.alpha));
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return Err(ModelingError::InvalidTheta(self.theta));
        }
        if self.k == 0 {
            return Err(ModelingError::InvalidK);
        }
        Ok(())
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            decay: DecayParams::default(),
            alpha: Self::DEFAULT_ALPHA,
            theta: Self::DEFAULT_THETA,
            k: Self::DEFAULT_K,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decay_fixed_points() {
        let p = DecayParams::default();
        let h = p.half_life();
        assert_eq!(decay(0.0, &p).unwrap(), 1.0);
        assert_eq!(decay(h, &p).unwrap(), 0.5);
        assert_eq!(decay(2.0 * h, &p).unwrap(), 0.25);
        assert!(decay(-1.0, &p).is_err());
        assert!(DecayParams::new(0.0).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::default().validate().is_ok());
        let bad = ModelParams {
            alpha: 1.0,
            ..ModelParams::default()
        };
        assert_eq!(bad.validate(), Err(ModelingError::InvalidAlpha(1.0)));
    }

    proptest! {
        #[test]
        fn decay_strictly_decreasing(a in 0u32..400_000_000, b in 0u32..400_000_000) {
            prop_assume!(a != b);
            let p = DecayParams::default();
            let (lo, hi) = (a.min(b) as f64, a.max(b) as f64);
            let (dl, dh) = (decay(lo, &p).unwrap(), decay(hi, &p).unwrap());
            prop_assert!(dl > dh);
            prop_assert!(dh > 0.0 && dl <= 1.0);
        }
    }
}
