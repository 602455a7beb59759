use std::cmp::Ordering;

use super::{decay, DecayParams, ModelingError};
use crate::model::{SourceRegistry, Timestamp, UserCharacteristic};
use crate::rdf::render_term_full;

/// The claim with the highest `trust × decay(age)`. Ties go to the later
/// claim, then the smaller source IRI, then the smaller value.
pub fn resolve_characteristic(
    claims: &[UserCharacteristic],
    registry: &SourceRegistry,
    as_of: Timestamp,
    p: &DecayParams,
) -> Result<UserCharacteristic, ModelingError> {
    let first = claims.first().ok_or(ModelingError::EmptyClaims)?;
    if claims.iter().any(|c| c.user != first.user || c.property != first.property) {
        return Err(ModelingError::MixedClaims);
    }
    let mut scored = Vec::with_capacity(claims.len());
    for c in claims {
        let age = as_of.seconds_since(c.observed_at) as f64;
        scored.push((registry.trust(&c.source) * decay(age, p)?, c));
    }
    let better = |a: &(f64, &UserCharacteristic), b: &(f64, &UserCharacteristic)| -> Ordering {
        a.0.total_cmp(&b.0)
            .then(a.1.observed_at.cmp(&b.1.observed_at))
            .then(b.1.source.cmp(&a.1.source))
            .then_with(|| render_term_full(&b.1.value).cmp(&render_term_full(&a.1.value)))
    };
    let best = scored.iter().max_by(|a, b| better(a, b)).expect("non-empty");
    Ok(best.1.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Iri, Literal};
    use crate::vocab;

    fn claim(source: &str, value: &str, at: &str) -> UserCharacteristic {
        UserCharacteristic::new(
            Iri::constant("http://bob.myopenid.com"),
            Iri::constant(vocab::FOAF_NAME),
            Literal::string(value).into(),
            Iri::constant(source),
            Timestamp::parse(at).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn trusted_source_wins_at_equal_time() {
        let mut reg = SourceRegistry::default();
        reg.register(Iri::constant("http://a/"), 0.9).unwrap();
        reg.register(Iri::constant("http://b/"), 0.4).unwrap();
        let now = Timestamp::parse("2011-02-16 00:00:00").unwrap();
        let claims = [claim("http://b/", "Robert", "2011-02-15 20:00:00"), claim("http://a/", "Bob", "2011-02-15 20:00:00")];
        let w = resolve_characteristic(&claims, &reg, now, &DecayParams::default()).unwrap();
        assert_eq!(w.source, Iri::constant("http://a/"));
        assert_eq!(resolve_characteristic(&claims[..1], &reg, now, &DecayParams::default()).unwrap(), claims[0]);
    }

    #[test]
    fn ties_prefer_later_then_smaller_source() {
        let reg = SourceRegistry::default();
        let now = Timestamp::parse("2011-02-15 20:00:00").unwrap();
        let p = DecayParams::new(1e15).unwrap();
        let a = claim("http://b/", "x", "2011-02-15 20:00:00");
        let b = claim("http://a/", "y", "2011-02-15 20:00:00");
        assert_eq!(resolve_characteristic(&[a.clone(), b.clone()], &reg, now, &p).unwrap(), b);
        assert_eq!(resolve_characteristic(&[b.clone(), a], &reg, now, &p).unwrap(), b);
    }

    #[test]
    fn errors() {
        let reg = SourceRegistry::default();
        let now = Timestamp::parse("2011-02-16 00:00:00").unwrap();
        let p = DecayParams::default();
        assert_eq!(resolve_characteristic(&[], &reg, now, &p), Err(ModelingError::EmptyClaims));
        let mut other = claim("http://a/", "x", "2011-02-15 20:00:00");
        other.property = Iri::constant(vocab::FOAF_WORKPLACE_HOMEPAGE);
        assert_eq!(
            resolve_characteristic(&[claim("http://a/", "x", "2011-02-15 20:00:00"), other], &reg, now, &p),
            Err(ModelingError::MixedClaims)
        );
        assert!(matches!(
            resolve_characteristic(&[claim("http://a/", "x", "2011-02-17 00:00:00")], &reg, now, &p),
            Err(ModelingError::NegativeDelta(_))
        ));
    }
}
