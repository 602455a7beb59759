mod common;

use usem_core::model::Timestamp;
use usem_core::modeling::knowledge_entries;
use usem_core::rdf::{parse_turtle, Iri, Term};

use common::*;

const DIS: &str = "http://dbpedia.org/resource/Category:Diseases";
const HALLUCINATION: &str = "http://dbpedia.org/resource/Hallucination";
const EPILEPSY: &str = "http://dbpedia.org/resource/Epilepsy";

#[test]
fn ingest_report_counts() {
    let e = engine();
    let r = e.ingest(&scenario_batch()).unwrap();
    assert_eq!(r.observations, 3, "{r:?}");
    assert_eq!(r.characteristics, 2, "{r:?}");
    assert!(r.evidence >= 5, "{r:?}");
    assert!(r.warnings.is_empty(), "{r:?}");
}

#[test]
fn profile_has_expected_knowledge_and_workplace() {
    let e = engine();
    e.ingest(&scenario_batch()).unwrap();
    let bob = Iri::new(BOB).unwrap();
    let ttl = e.profile_turtle(&bob, Some(Timestamp::parse("2011-02-16 00:00:00").unwrap())).unwrap();
    let g = parse_turtle(&ttl, None).unwrap();
    let topics: Vec<Term> = knowledge_entries(&g, &bob).into_iter().map(|k| k.0).collect();
    for c in [HALLUCINATION, EPILEPSY, DIS] {
        assert!(topics.contains(&Term::Iri(Iri::new(c).unwrap())), "{c} missing from\n{ttl}");
    }
    assert!(ttl.contains("<http://mh-hannover.de/>"), "{ttl}");
}

#[test]
fn account_alias_yields_same_profile() {
    let e = engine();
    e.ingest(&scenario_batch()).unwrap();
    let t = Some(Timestamp::parse("2011-02-16 00:00:00").unwrap());
    let a = e.profile_turtle(&Iri::new(BOB).unwrap(), t).unwrap();
    let b = e.profile_turtle(&Iri::new("http://twitter.com/bob").unwrap(), t).unwrap();
    assert_eq!(a, b);
}

#[test]
fn reingest_is_idempotent_for_adapter_records() {
    let e = engine();
    let batch = scenario_batch();
    e.ingest(&batch).unwrap();
    let before = e.store_snapshot();
    e.ingest(&batch).unwrap();
    assert_eq!(e.store_snapshot().len(), before.len());
}

#[test]
fn unknown_user_is_an_error() {
    let e = engine();
    e.ingest(&scenario_batch()).unwrap();
    assert!(e.profile_turtle(&Iri::new("http://nobody.example/").unwrap(), None).is_err());
}
