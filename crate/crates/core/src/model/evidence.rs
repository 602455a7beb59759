use std::fmt;

use super::{ModelError, Timestamp};
use crate::mint::content_hash;
use crate::rdf::{Graph, Iri, Literal, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvidenceKind {
    Interest,
    Knowledge,
}

impl EvidenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EvidenceKind::Interest => "interest",
            EvidenceKind::Knowledge => "knowledge",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "interest" => Some(EvidenceKind::Interest),
            "knowledge" => Some(EvidenceKind::Knowledge),
            _ => None,
        }
    }
}

impl fmt::Display for EvidenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn sign(self) -> f64 {
        match self {
            Polarity::Positive => 1.0,
            Polarity::Negative => -1.0,
        }
    }

    pub fn from_sign(v: i64) -> Option<Self> {
        match v {
            1 => Some(Polarity::Positive),
            -1 => Some(Polarity::Negative),
            _ => None,
        }
    }
}

/// A signed, weighted, timestamped (user, concept) signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceItem {
    pub user: Iri,
    pub concept: Iri,
    pub kind: EvidenceKind,
    pub polarity: Polarity,
    pub weight: f64,
    pub time: Timestamp,
    pub source: Iri,
    pub origin: Iri,
}

impl EvidenceItem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        user: Iri,
        concept: Iri,
        kind: EvidenceKind,
        polarity: Polarity,
        weight: f64,
        time: Timestamp,
        source: Iri,
        origin: Iri,
    ) -> Result<Self, ModelError> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(ModelError::InvalidWeight(weight));
        }
        Ok(EvidenceItem {
            user,
            concept,
            kind,
            polarity,
            weight,
            time,
            source,
            origin,
        })
    }

    /// Content-derived node IRI.
    pub fn node_iri(&self) -> Iri {
        let sign = if self.polarity == Polarity::Positive { "+1" } else { "-1" };
        let hash = content_hash(&[
            self.user.as_str(),
            self.concept.as_str(),
            self.kind.as_str(),
            sign,
            &self.weight.to_string(),
            &self.time.to_string(),
            self.source.as_str(),
            self.origin.as_str(),
        ]);
        Iri::new(format!("{}{hash}", vocab::EVIDENCE_BASE)).expect("evidence base is absolute")
    }
}

/// Writes each item as a `usem:Evidence` node.
pub fn evidence_to_graph(items: &[EvidenceItem]) -> Graph {
    let mut g = Graph::with_standard_prefixes();
    let p = Iri::constant;
    for e in items {
        let n = e.node_iri();
        let sign = if e.polarity == Polarity::Positive { 1 } else { -1 };
        g.insert(Triple::spo(&n, &p(vocab::RDF_TYPE), p(vocab::USEM_EVIDENCE)));
        g.insert(Triple::spo(&n, &p(vocab::USEM_USER), &e.user));
        g.insert(Triple::spo(&n, &p(vocab::USEM_CONCEPT), &e.concept));
        g.insert(Triple::spo(&n, &p(vocab::USEM_KIND), Literal::string(e.kind.as_str())));
        g.insert(Triple::spo(&n, &p(vocab::USEM_POLARITY), Literal::integer(sign)));
        g.insert(Triple::spo(&n, &p(vocab::USEM_WEIGHT), Literal::decimal(e.weight)));
        g.insert(Triple::spo(&n, &p(vocab::USEM_TIME), Literal::string(e.time.to_string())));
        g.insert(Triple::spo(&n, &p(vocab::USEM_SOURCE), &e.source));
        g.insert(Triple::spo(&n, &p(vocab::USEM_ORIGIN), &e.origin));
    }
    g
}

/// Every well-formed evidence node in `g`, in store order.
pub fn evidence_from_graph(g: &Graph) -> Vec<EvidenceItem> {
    let p = Iri::constant;
    let class = Term::Iri(p(vocab::USEM_EVIDENCE));
    let mut out = Vec::new();
    for node in g.subjects(&p(vocab::RDF_TYPE), Some(&class)) {
        let one = |prop: &str| {
            let vals = g.objects(&node, &p(prop));
            (vals.len() == 1).then(|| vals.into_iter().next().unwrap())
        };
        let parsed = (|| {
            let iri = |prop: &str| one(prop).and_then(|t| t.as_iri().cloned());
            let lit = |prop: &str| one(prop).and_then(|t| t.as_literal().cloned());
            let kind = EvidenceKind::parse(lit(vocab::USEM_KIND)?.lexical())?;
            let polarity = Polarity::from_sign(lit(vocab::USEM_POLARITY)?.lexical().parse().ok()?)?;
            let weight = lit(vocab::USEM_WEIGHT)?.as_f64()?;
            let time = Timestamp::parse(lit(vocab::USEM_TIME)?.lexical()).ok()?;
            EvidenceItem::new(
                iri(vocab::USEM_USER)?,
                iri(vocab::USEM_CONCEPT)?,
                kind,
                polarity,
                weight,
                time,
                iri(vocab::USEM_SOURCE)?,
                iri(vocab::USEM_ORIGIN)?,
            )
            .ok()
        })();
        out.extend(parsed);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle, serialize_turtle};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn evidence_survives_turtle(weight in 0.001f64..100.0, negative: bool, knowledge: bool, secs in 1i64..2_000_000_000) {
            let e = EvidenceItem::new(
                Iri::constant("http://bob.myopenid.com"),
                Iri::constant("http://dbpedia.org/resource/Epilepsy"),
                if knowledge { EvidenceKind::Knowledge } else { EvidenceKind::Interest },
                if negative { Polarity::Negative } else { Polarity::Positive },
                weight,
                Timestamp::from_epoch_seconds(secs),
                Iri::constant("http://twitter.com/"),
                Iri::constant("http://imreal-project.eu/observation/4"),
            ).unwrap();
            let text = serialize_turtle(&evidence_to_graph(std::slice::from_ref(&e)));
            let back = evidence_from_graph(&parse_turtle(&text, None).unwrap());
            prop_assert_eq!(back, vec![e]);
        }
    }

    #[test]
    fn weight_must_be_positive() {
        let mk = |w| {
            EvidenceItem::new(
                Iri::constant("http://u"),
                Iri::constant("http://c"),
                EvidenceKind::Interest,
                Polarity::Positive,
                w,
                Timestamp::EPOCH,
                Iri::constant("http://s"),
                Iri::constant("http://o"),
            )
        };
        assert!(mk(0.0).is_err() && mk(-1.0).is_err() && mk(f64::NAN).is_err());
        assert!(mk(0.5).is_ok());
    }
}
