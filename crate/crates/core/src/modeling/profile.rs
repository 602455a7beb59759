use std::collections::BTreeMap;

use super::scoring::{interest_weights, knowledge_levels, ScoringContext, WeightedInterest, WeightedKnowledge};
use super::{infer_related_knowledge, resolve_characteristic, ModelParams, ModelingError};
use crate::model::{
    characteristics_from_graph, evidence_from_graph, ConceptTaxonomy, EvidenceItem, Scale, SourceRegistry, Timestamp,
    UserCharacteristic,
};
use crate::rdf::{BlankNode, Graph, Iri, Literal, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq)]
pub struct UserProfile {
    pub user: Iri,
    /// One resolved claim per property, by property IRI.
    pub characteristics: Vec<UserCharacteristic>,
    pub interests: Vec<WeightedInterest>,
    /// Direct and inferred entries, one per concept, by concept IRI.
    pub knowledge: Vec<WeightedKnowledge>,
    pub as_of: Timestamp,
}

/// Evidence and claims read from a store snapshot.
#[derive(Debug, Clone, Default)]
pub struct ProfileData {
    pub evidence: Vec<EvidenceItem>,
    pub claims: Vec<UserCharacteristic>,
}

impl ProfileData {
    pub fn from_graph(store: &Graph) -> Self {
        ProfileData {
            evidence: evidence_from_graph(store),
            claims: characteristics_from_graph(store),
        }
    }

    pub fn knows(&self, user: &Iri) -> bool {
        self.evidence.iter().any(|e| e.user == *user) || self.claims.iter().any(|c| c.user == *user)
    }

    /// Latest evidence or claim time, if any.
    pub fn latest(&self) -> Option<Timestamp> {
        let e = self.evidence.iter().map(|e| e.time);
        let c = self.claims.iter().map(|c| c.observed_at);
        e.chain(c).max()
    }
}

/// Resolves characteristics, scores interests and knowledge, and adds
/// inferred knowledge. Declared interests are not repeated as
/// characteristics; they reach the profile as interest evidence.
pub fn build_profile(
    user: &Iri,
    data: &ProfileData,
    registry: &SourceRegistry,
    taxonomy: &ConceptTaxonomy,
    as_of: Timestamp,
    params: &ModelParams,
) -> Result<UserProfile, ModelingError> {
    params.validate()?;
    if !data.knows(user) {
        return Err(ModelingError::UnknownUser(user.clone()));
    }
    let mut by_property: BTreeMap<&Iri, Vec<UserCharacteristic>> = BTreeMap::new();
    for c in &data.claims {
        if c.user == *user && c.observed_at <= as_of && c.property.as_str() != vocab::USEM_DECLARED_INTEREST {
            by_property.entry(&c.property).or_default().push(c.clone());
        }
    }
    let characteristics = by_property
        .values()
        .map(|claims| resolve_characteristic(claims, registry, as_of, &params.decay))
        .collect::<Result<Vec<_>, _>>()?;
    let cx = ScoringContext::new(registry, taxonomy, as_of, params.decay, params.alpha)?;
    let mut profile = UserProfile {
        user: user.clone(),
        characteristics,
        interests: interest_weights(user, &data.evidence, &cx)?,
        knowledge: knowledge_levels(user, &data.evidence, &cx)?,
        as_of,
    };
    let inferred = infer_related_knowledge(&profile, taxonomy, params.theta)?;
    profile.knowledge.extend(inferred);
    profile.knowledge.sort_by(|a, b| a.concept.cmp(&b.concept));
    Ok(profile)
}

fn weight_node(g: &mut Graph, holder: &BlankNode, value: f64, scale: &Iri) {
    let p = Iri::constant;
    let w = g.fresh_blank();
    g.insert(Triple::bpo(holder, &p(vocab::WO_WEIGHT), w.clone()));
    g.insert(Triple::bpo(&w, &p(vocab::RDF_TYPE), p(vocab::WO_WEIGHT_CLASS)));
    g.insert(Triple::bpo(&w, &p(vocab::WO_WEIGHT_VALUE), Literal::decimal(value)));
    g.insert(Triple::bpo(&w, &p(vocab::WO_SCALE), scale));
}

fn declare_scale(g: &mut Graph, s: &Scale) {
    let p = Iri::constant;
    g.insert(Triple::spo(s.iri(), &p(vocab::RDF_TYPE), p(vocab::WO_SCALE_CLASS)));
    g.insert(Triple::spo(s.iri(), &p(vocab::WO_MIN_WEIGHT), Literal::decimal(s.min())));
    g.insert(Triple::spo(s.iri(), &p(vocab::WO_MAX_WEIGHT), Literal::decimal(s.max())));
}

/// FOAF person with `wi:preference` interests and `usem:knowledge` entries,
/// each weight a `wo:Weight` on a declared scale.
pub fn profile_to_graph(profile: &UserProfile) -> Graph {
    let p = Iri::constant;
    let mut g = Graph::with_standard_prefixes();
    let user = &profile.user;
    g.insert(Triple::spo(user, &p(vocab::RDF_TYPE), p(vocab::FOAF_PERSON)));
    for c in &profile.characteristics {
        g.insert(Triple::spo(user, &c.property, c.value.clone()));
    }
    let unit = Scale::unit();
    for i in &profile.interests {
        let node = g.fresh_blank();
        g.insert(Triple::spo(user, &p(vocab::WI_PREFERENCE), node.clone()));
        g.insert(Triple::bpo(&node, &p(vocab::RDF_TYPE), p(vocab::WI_WEIGHTED_INTEREST)));
        g.insert(Triple::bpo(&node, &p(vocab::WI_TOPIC), &i.concept));
        weight_node(&mut g, &node, i.weight, unit.iri());
    }
    for k in &profile.knowledge {
        let node = g.fresh_blank();
        g.insert(Triple::spo(user, &p(vocab::USEM_KNOWLEDGE), node.clone()));
        g.insert(Triple::bpo(&node, &p(vocab::RDF_TYPE), p(vocab::USEM_WEIGHTED_KNOWLEDGE)));
        g.insert(Triple::bpo(&node, &p(vocab::WI_TOPIC), &k.concept));
        weight_node(&mut g, &node, k.level, &k.scale);
        if k.inferred {
            g.insert(Triple::bpo(&node, &p(vocab::USEM_INFERRED), Literal::boolean(true)));
        }
    }
    if !profile.interests.is_empty() {
        declare_scale(&mut g, &unit);
    }
    let a_scale = Scale::a_scale();
    if profile.knowledge.iter().any(|k| &k.scale == a_scale.iri()) {
        declare_scale(&mut g, &a_scale);
    }
    g
}

/// [`build_profile`] over a store snapshot, as a graph.
pub fn emit_profile(
    user: &Iri,
    store: &Graph,
    registry: &SourceRegistry,
    taxonomy: &ConceptTaxonomy,
    as_of: Timestamp,
    params: &ModelParams,
) -> Result<Graph, ModelingError> {
    let data = ProfileData::from_graph(store);
    Ok(profile_to_graph(&build_profile(user, &data, registry, taxonomy, as_of, params)?))
}

/// Knowledge nodes of an emitted profile: (topic, weight value, scale,
/// inferred).
pub fn knowledge_entries(g: &Graph, user: &Iri) -> Vec<(Term, Option<Term>, Option<Term>, bool)> {
    let p = Iri::constant;
    g.objects(&Term::Iri(user.clone()), &p(vocab::USEM_KNOWLEDGE))
        .into_iter()
        .map(|k| {
            let topic = g.object(&k, &p(vocab::WI_TOPIC)).expect("knowledge node has a topic");
            let w = g.object(&k, &p(vocab::WO_WEIGHT));
            let value = w.as_ref().and_then(|w| g.object(w, &p(vocab::WO_WEIGHT_VALUE)));
            let scale = w.as_ref().and_then(|w| g.object(w, &p(vocab::WO_SCALE)));
            let inferred = g.object(&k, &p(vocab::USEM_INFERRED)) == Some(Literal::boolean(true).into());
            (topic, value, scale, inferred)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{evidence_to_graph, EvidenceKind, Polarity, TaxonomyBuilder};
    use crate::rdf::{graphs_isomorphic, parse_turtle, serialize_turtle, TriplePattern};

    const LISTING: &str = r#"
@prefix foaf: <http://xmlns.com/foaf/0.1/> .
@prefix usem: <http://wis.ewi.tudelft.nl/rdf/usem#> .
@prefix wi: <http://purl.org/ontology/wi/core#> .
@prefix wo: <http://purl.org/ontology/wo/core#> .
@prefix dbpedia: <http://dbpedia.org/resource/> .
@prefix ex: <http://example.org/> .
<http://bob.myopenid.com>
   a foaf:Person ;
   foaf:name "Bob";
   usem:knowledge [
      a usem:WeightedKnowledge ;
      wi:topic dbpedia:Psychology ;
      wo:weight [
         a wo:Weight ;
         wo:weight_value 10.0 ;
         wo:scale ex:AScale
         ] ] .
"#;

    fn bob() -> Iri {
        Iri::constant("http://bob.myopenid.com")
    }

    #[test]
    fn listing_shape_reproduced() {
        let profile = UserProfile {
            user: bob(),
            characteristics: vec![UserCharacteristic::new(
                bob(),
                Iri::constant(vocab::FOAF_NAME),
                Literal::string("Bob").into(),
                Iri::constant("http://linkedin.com/"),
                Timestamp::EPOCH,
            )
            .unwrap()],
            interests: vec![],
            knowledge: vec![WeightedKnowledge::direct(Iri::constant("http://dbpedia.org/resource/Psychology"), 10.0)],
            as_of: Timestamp::EPOCH,
        };
        let mut g = profile_to_graph(&profile);
        let scale = Term::Iri(Iri::constant(vocab::EX_ASCALE));
        for t in g.matching(&TriplePattern::new(Some(scale), None, None)) {
            g.remove(&t);
        }
        let expected = parse_turtle(LISTING, None).unwrap();
        assert!(graphs_isomorphic(&g, &expected), "{}", serialize_turtle(&g));
    }

    #[test]
    fn unknown_user_is_an_error() {
        let t = TaxonomyBuilder::new(Iri::constant("http://x/root")).build().unwrap();
        let r = emit_profile(&bob(), &Graph::new(), &SourceRegistry::default(), &t, Timestamp::EPOCH, &ModelParams::default());
        assert_eq!(r.unwrap_err(), ModelingError::UnknownUser(bob()));
    }

    #[test]
    fn emitted_profile_reparses_with_one_node_per_concept() {
        let d = |s: &str| Iri::new(format!("http://dbpedia.org/resource/{s}")).unwrap();
        let mut b = TaxonomyBuilder::new(d("Root"));
        b.broader(d("Diseases"), d("Root"))
            .broader(d("Hallucination"), d("Diseases"))
            .broader(d("Epilepsy"), d("Diseases"));
        let t = b.build().unwrap();
        let now = Timestamp::parse("2011-02-16 00:00:00").unwrap();
        let item = |c: &str, kind| {
            EvidenceItem::new(bob(), d(c), kind, Polarity::Positive, 1.0, now, Iri::constant("http://citeulike.org/"), Iri::constant("http://o/1"))
                .unwrap()
        };
        let store = evidence_to_graph(&[item("Hallucination", EvidenceKind::Knowledge), item("Epilepsy", EvidenceKind::Interest)]);
        let g = emit_profile(&bob(), &store, &SourceRegistry::default(), &t, now, &ModelParams::default()).unwrap();
        let text = serialize_turtle(&g);
        let back = parse_turtle(&text, None).unwrap();
        assert!(graphs_isomorphic(&g, &back));
        let entries = knowledge_entries(&back, &bob());
        let mut topics: Vec<String> = entries.iter().map(|e| crate::rdf::render_term_full(&e.0)).collect();
        let n = topics.len();
        topics.dedup();
        assert_eq!(topics.len(), n);
        assert!(entries.iter().all(|e| e.1.is_some() && e.2 == Some(Term::Iri(Iri::constant(vocab::EX_ASCALE)))));
        // Hallucination direct, Diseases and Root by propagation, Epilepsy inferred.
        assert_eq!(n, 4);
        assert!(entries.iter().any(|e| e.0 == Term::Iri(d("Epilepsy")) && e.3));
    }
}
