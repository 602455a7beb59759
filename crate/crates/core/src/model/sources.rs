use std::collections::BTreeMap;

use super::ModelError;
use crate::rdf::Iri;
use crate::vocab;

/// Per-source trust in [0,1] with a default for unregistered sources.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceRegistry {
    trust: BTreeMap<Iri, f64>,
    default_trust: f64,
}

impl SourceRegistry {
    pub const DEFAULT_TRUST: f64 = 0.5;

    pub fn new(default_trust: f64) -> Result<Self, ModelError> {
        if !(default_trust > 0.0 && default_trust < 1.0) {
            return Err(ModelError::InvalidDefaultTrust(default_trust));
        }
        Ok(SourceRegistry {
            trust: BTreeMap::new(),
            default_trust,
        })
    }

    pub fn register(&mut self, source: Iri, trust: f64) -> Result<(), ModelError> {
        if !(0.0..=1.0).contains(&trust) {
            return Err(ModelError::InvalidTrust(trust));
        }
        self.trust.insert(source, trust);
        Ok(())
    }

    pub fn trust(&self, source: &Iri) -> f64 {
        self.trust.get(source).copied().unwrap_or(self.default_trust)
    }

    pub fn default_trust(&self) -> f64 {
        self.default_trust
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Iri, f64)> {
        self.trust.iter().map(|(k, v)| (k, *v))
    }
}

impl Default for SourceRegistry {
    fn default() -> Self {
        SourceRegistry::new(Self::DEFAULT_TRUST).expect("default trust is valid")
    }
}

/// Numeric range giving meaning to a weight value.
#[derive(Debug, Clone, PartialEq)]
pub struct Scale {
    iri: Iri,
    min: f64,
    max: f64,
}

impl Scale {
    pub fn new(iri: Iri, min: f64, max: f64) -> Result<Self, ModelError> {
        if min.partial_cmp(&max) != Some(std::cmp::Ordering::Less) {
            return Err(ModelError::InvalidScale { min, max });
        }
        Ok(Scale { iri, min, max })
    }

    /// `ex:AScale`, declared as [0,10].
    pub fn a_scale() -> Self {
        Scale::new(Iri::constant(vocab::EX_ASCALE), 0.0, 10.0).expect("valid bounds")
    }

    /// `usem:UnitScale`, [0,1], used for interest weights.
    pub fn unit() -> Self {
        Scale::new(Iri::constant(vocab::USEM_UNIT_SCALE), 0.0, 1.0).expect("valid bounds")
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_defaults_and_bounds() {
        let mut r = SourceRegistry::default();
        let s = Iri::constant("http://linkedin.com/");
        assert_eq!(r.trust(&s), 0.5);
        r.register(s.clone(), 0.9).unwrap();
        assert_eq!(r.trust(&s), 0.9);
        assert!(r.register(s, 1.5).is_err());
        assert!(SourceRegistry::new(0.0).is_err());
        assert!(SourceRegistry::new(1.0).is_err());
    }

    #[test]
    fn scale_bounds() {
        let a = Scale::a_scale();
        assert!(a.contains(10.0) && a.contains(0.0) && !a.contains(10.5));
        assert!(Scale::new(Iri::constant("http://s"), 1.0, 1.0).is_err());
    }
}
