use std::collections::{BTreeMap, BTreeSet};

use super::{ModelingError, UserProfile, WeightedKnowledge};
use crate::model::{ConceptTaxonomy, EvidenceItem, ModelError};
use crate::rdf::Iri;

/// Wu–Palmer similarity `2·depth(lca) / (depth(a) + depth(b))`; 1 for
/// identical concepts, including the root.
pub fn wu_palmer(t: &ConceptTaxonomy, a: &Iri, b: &Iri) -> Result<f64, ModelError> {
    if a == b {
        t.depth(a)?;
        return Ok(1.0);
    }
    let (da, db) = (t.depth(a)?, t.depth(b)?);
    if da + db == 0 {
        return Ok(1.0);
    }
    let l = t.depth(&t.lca(a, b)?)?;
    Ok(2.0 * l as f64 / (da + db) as f64)
}

/// Knowledge for concepts without a direct entry, scaled from the most
/// similar directly known concept when that similarity reaches `theta`.
/// Similarity ties go to the higher level, then the smaller IRI.
pub fn infer_related_knowledge(
    profile: &UserProfile,
    t: &ConceptTaxonomy,
    theta: f64,
) -> Result<Vec<WeightedKnowledge>, ModelingError> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(ModelingError::InvalidTheta(theta));
    }
    let direct: Vec<&WeightedKnowledge> =
        profile.knowledge.iter().filter(|k| !k.inferred && t.contains(&k.concept)).collect();
    let known: BTreeSet<&Iri> = direct.iter().map(|k| &k.concept).collect();
    let mut out = Vec::new();
    for target in t.concepts().iter().filter(|c| !known.contains(c)) {
        let mut best: Option<(f64, &WeightedKnowledge)> = None;
        for k in &direct {
            let sim = wu_palmer(t, &k.concept, target)?;
            let replace = match best {
                None => true,
                Some((bs, bk)) => sim > bs || (sim == bs && (k.level > bk.level || (k.level == bk.level && k.concept < bk.concept))),
            };
            if replace {
                best = Some((sim, k));
            }
        }
        if let Some((sim, k)) = best.filter(|(sim, _)| *sim >= theta) {
            out.push(WeightedKnowledge {
                concept: target.clone(),
                level: sim * k.level,
                scale: k.scale.clone(),
                inferred: true,
            });
        }
    }
    Ok(out)
}

/// Concept pairs that co-occur in evidence from at least `k` distinct
/// observations and are not yet linked by a broader path or `skos:related`.
pub fn discover_skos_related(
    evidence: &[EvidenceItem],
    t: &ConceptTaxonomy,
    k: usize,
) -> Result<Vec<(Iri, Iri)>, ModelingError> {
    if k == 0 {
        return Err(ModelingError::InvalidK);
    }
    let mut by_origin: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for e in evidence.iter().filter(|e| t.contains(&e.concept)) {
        by_origin.entry(&e.origin).or_default().insert(&e.concept);
    }
    let mut counts: BTreeMap<(&Iri, &Iri), usize> = BTreeMap::new();
    for concepts in by_origin.values() {
        let v: Vec<&Iri> = concepts.iter().copied().collect();
        for (n, a) in v.iter().enumerate() {
            for b in &v[n + 1..] {
                *counts.entry((a, b)).or_default() += 1;
            }
        }
    }
    Ok(counts
        .into_iter()
        .filter(|((a, b), n)| *n >= k && !t.on_broader_path(a, b) && !t.is_related(a, b))
        .map(|((a, b), _)| (a.clone(), b.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EvidenceKind, Polarity, TaxonomyBuilder, Timestamp};

    fn i(s: &str) -> Iri {
        Iri::new(format!("http://dbpedia.org/resource/{s}")).unwrap()
    }

    fn taxonomy() -> ConceptTaxonomy {
        let mut b = TaxonomyBuilder::new(i("Root"));
        b.broader(i("Diseases"), i("Root"))
            .broader(i("Hallucination"), i("Diseases"))
            .broader(i("Epilepsy"), i("Diseases"))
            .broader(i("Music"), i("Root"));
        b.build().unwrap()
    }

    fn profile(knowledge: Vec<WeightedKnowledge>) -> UserProfile {
        UserProfile {
            user: Iri::constant("http://bob.myopenid.com"),
            characteristics: vec![],
            interests: vec![],
            knowledge,
            as_of: Timestamp::EPOCH,
        }
    }

    #[test]
    fn similarity_basics() {
        let t = taxonomy();
        assert_eq!(wu_palmer(&t, &i("Epilepsy"), &i("Epilepsy")).unwrap(), 1.0);
        assert_eq!(wu_palmer(&t, &i("Root"), &i("Root")).unwrap(), 1.0);
        assert_eq!(wu_palmer(&t, &i("Root"), &i("Epilepsy")).unwrap(), 0.0);
        assert_eq!(wu_palmer(&t, &i("Hallucination"), &i("Epilepsy")).unwrap(), 0.5);
        assert!(wu_palmer(&t, &i("Nope"), &i("Epilepsy")).is_err());
    }

    #[test]
    fn sibling_inference() {
        let t = taxonomy();
        let p = profile(vec![WeightedKnowledge::direct(i("Hallucination"), 8.0)]);
        let inferred = infer_related_knowledge(&p, &t, 0.5).unwrap();
        let epi = inferred.iter().find(|k| k.concept == i("Epilepsy")).unwrap();
        assert_eq!(epi.level, 4.0);
        assert!(epi.inferred);
        assert!(inferred.iter().all(|k| k.concept != i("Hallucination")));
        // Diseases: lca = Diseases (depth 1), 2·1/(2+1).
        let dis = inferred.iter().find(|k| k.concept == i("Diseases")).unwrap();
        assert!((dis.level - 8.0 * 2.0 / 3.0).abs() < 1e-12);
        assert!(inferred.iter().all(|k| k.concept != i("Music")));
    }

    #[test]
    fn root_knowledge_infers_nothing() {
        let t = taxonomy();
        let p = profile(vec![WeightedKnowledge::direct(i("Root"), 9.0)]);
        assert!(infer_related_knowledge(&p, &t, 0.9).unwrap().is_empty());
        assert!(infer_related_knowledge(&p, &t, 0.0).is_err());
    }

    fn ev(concept: &str, origin: usize) -> EvidenceItem {
        EvidenceItem::new(
            Iri::constant("http://bob.myopenid.com"),
            i(concept),
            EvidenceKind::Interest,
            Polarity::Positive,
            1.0,
            Timestamp::from_epoch_seconds(1),
            Iri::constant("http://twitter.com/"),
            Iri::new(format!("http://imreal-project.eu/observation/{origin}")).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn co_occurrence_threshold() {
        let t = taxonomy();
        assert!(discover_skos_related(&[], &t, 3).unwrap().is_empty());
        let mut items = Vec::new();
        for o in 0..3 {
            items.push(ev("Epilepsy", o));
            items.push(ev("Music", o));
            items.push(ev("Diseases", o));
        }
        let pairs = discover_skos_related(&items, &t, 3).unwrap();
        assert_eq!(pairs, vec![(i("Diseases"), i("Music")), (i("Epilepsy"), i("Music"))]);
        assert!(discover_skos_related(&items, &t, 4).unwrap().is_empty());
    }
}
