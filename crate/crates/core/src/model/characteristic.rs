use super::{ModelError, Timestamp};
use crate::mint::content_hash;
use crate::rdf::{render_term_full, Graph, Iri, Literal, Term, Triple};
use crate::vocab;

/// One source's claim about an explicit user attribute.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UserCharacteristic {
    pub user: Iri,
    pub property: Iri,
    pub value: Term,
    pub source: Iri,
    pub observed_at: Timestamp,
}

impl UserCharacteristic {
    pub fn new(user: Iri, property: Iri, value: Term, source: Iri, observed_at: Timestamp) -> Result<Self, ModelError> {
        if !is_characteristic_property(&property) {
            return Err(ModelError::NotCharacteristic(property));
        }
        Ok(UserCharacteristic {
            user,
            property,
            value,
            source,
            observed_at,
        })
    }

    /// Content-derived claim node IRI.
    pub fn claim_iri(&self) -> Iri {
        let value = render_term_full(&self.value);
        let at = self.observed_at.to_string();
        let hash = content_hash(&[self.user.as_str(), self.property.as_str(), &value, self.source.as_str(), &at]);
        Iri::new(format!("{}{hash}", vocab::CLAIM_BASE)).expect("claim base is absolute")
    }
}

/// FOAF terms plus `usem:` extensions.
pub fn is_characteristic_property(p: &Iri) -> bool {
    let s = p.as_str();
    [vocab::FOAF, vocab::USEM]
        .iter()
        .any(|ns| s.strip_prefix(ns).is_some_and(|local| !local.is_empty()))
}

/// Writes `c` as a claim node carrying user, property, value, source and
/// observation time.
pub fn characteristic_to_graph(c: &UserCharacteristic) -> Graph {
    let mut g = Graph::with_standard_prefixes();
    let node = c.claim_iri();
    let p = Iri::constant;
    g.insert(Triple::spo(&node, &p(vocab::RDF_TYPE), p(vocab::USEM_CLAIM)));
    g.insert(Triple::spo(&node, &p(vocab::USEM_USER), &c.user));
    g.insert(Triple::spo(&node, &p(vocab::USEM_PROPERTY), &c.property));
    g.insert(Triple::spo(&node, &p(vocab::USEM_VALUE), c.value.clone()));
    g.insert(Triple::spo(&node, &p(vocab::USEM_SOURCE), &c.source));
    g.insert(Triple::spo(&node, &p(vocab::USEM_OBSERVED_AT), Literal::string(c.observed_at.to_string())));
    g
}

/// Every well-formed claim node in `g`, in store order.
pub fn characteristics_from_graph(g: &Graph) -> Vec<UserCharacteristic> {
    let p = Iri::constant;
    let claim = Term::Iri(p(vocab::USEM_CLAIM));
    let mut out = Vec::new();
    for node in g.subjects(&p(vocab::RDF_TYPE), Some(&claim)) {
        let one = |prop: &str| {
            let vals = g.objects(&node, &p(prop));
            (vals.len() == 1).then(|| vals.into_iter().next().unwrap())
        };
        let parsed = (|| {
            let user = one(vocab::USEM_USER)?.as_iri()?.clone();
            let property = one(vocab::USEM_PROPERTY)?.as_iri()?.clone();
            let value = one(vocab::USEM_VALUE)?;
            let source = one(vocab::USEM_SOURCE)?.as_iri()?.clone();
            let at = Timestamp::parse(one(vocab::USEM_OBSERVED_AT)?.as_literal()?.lexical()).ok()?;
            UserCharacteristic::new(user, property, value, source, at).ok()
        })();
        out.extend(parsed);
    }
    out
}
