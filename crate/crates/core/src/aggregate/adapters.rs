use std::collections::BTreeSet;

use super::{CiteULikeRecord, LinkedInRecord, RecordError, TwitterRecord};
use crate::mint::content_hash;
use crate::model::{Observation, Timestamp, UserCharacteristic};
use crate::rdf::{Graph, Iri, Literal, Term, Triple};
use crate::vocab;

/// Adapter output: observations, the resource triples that go with them, and
/// rejected records.
#[derive(Debug, Clone, Default)]
pub struct Ingested {
    pub observations: Vec<Observation>,
    pub graph: Graph,
    pub errors: Vec<RecordError>,
}

/// Observation IRI derived from the observation's content, so the same event
/// always gets the same IRI.
pub fn mint_observation_iri(source: &Iri, user: &Iri, activity: &Iri, object: &Iri, created: Timestamp) -> Iri {
    let hash = content_hash(&[
        source.as_str(),
        user.as_str(),
        activity.as_str(),
        object.as_str(),
        &created.epoch_seconds().to_string(),
    ]);
    Iri::new(format!("{}{}", vocab::OBSERVATION_BASE, &hash[..16])).expect("observation base is absolute")
}

fn observation(source: &Iri, user: &Iri, activity: &str, object: &Iri, created: Timestamp) -> Observation {
    let activity = Iri::constant(activity);
    Observation {
        id: mint_observation_iri(source, user, &activity, object, created),
        user: user.clone(),
        activity,
        object: object.clone(),
        created,
        creator: None,
        source: source.clone(),
    }
}

/// One `imreal:posted` observation per tweet, plus `tw:id`, `tw:username`,
/// `tw:content` and `tw:creationTime` on the minted tweet resource.
pub fn ingest_twitter(records: &[TwitterRecord], source: &Iri) -> Ingested {
    let mut out = Ingested {
        graph: Graph::with_standard_prefixes(),
        ..Ingested::default()
    };
    let mut seen = BTreeSet::new();
    let p = Iri::constant;
    for (index, r) in records.iter().enumerate() {
        if !seen.insert(r.id) {
            out.errors.push(RecordError {
                index,
                message: format!("duplicate tweet id {}", r.id),
            });
            continue;
        }
        if r.creation_time == Timestamp::EPOCH {
            out.errors.push(RecordError {
                index,
                message: "creation-time must be non-zero".into(),
            });
            continue;
        }
        let tweet = Iri::new(format!("{}{}", vocab::TWEET_BASE, r.id)).expect("tweet base is absolute");
        out.graph.insert(Triple::spo(&tweet, &p(vocab::TW_ID), Literal::integer(r.id as i64)));
        out.graph.insert(Triple::spo(&tweet, &p(vocab::TW_USERNAME), &r.username_iri));
        out.graph.insert(Triple::spo(&tweet, &p(vocab::TW_CONTENT), Literal::string(r.content.as_str())));
        out.graph.insert(Triple::spo(
            &tweet,
            &p(vocab::TW_CREATION_TIME),
            Literal::string(r.creation_time.to_string()),
        ));
        out.observations.push(observation(source, &r.username_iri, vocab::IMREAL_POSTED, &tweet, r.creation_time));
    }
    out
}

/// One `imreal:bookmarked` observation per bookmark. Tags become
/// `usem:tag` hint triples on the article.
pub fn ingest_citeulike(records: &[CiteULikeRecord], source: &Iri) -> Ingested {
    let mut out = Ingested {
        graph: Graph::with_standard_prefixes(),
        ..Ingested::default()
    };
    let tag = Iri::constant(vocab::USEM_TAG);
    for (index, r) in records.iter().enumerate() {
        if r.time == Timestamp::EPOCH {
            out.errors.push(RecordError {
                index,
                message: "time must be non-zero".into(),
            });
            continue;
        }
        for t in r.tags.iter().map(|t| t.trim()).filter(|t| !t.is_empty()) {
            out.graph.insert(Triple::spo(&r.article_iri, &tag, Literal::string(t)));
        }
        out.observations.push(observation(source, &r.user_iri, vocab::IMREAL_BOOKMARKED, &r.article_iri, r.time));
    }
    out
}

/// One characteristic per present field: `foaf:name`,
/// `foaf:workplaceHomepage`, and one `usem:declaredInterest` per interest.
pub fn ingest_linkedin(records: &[LinkedInRecord], source: &Iri, now: Timestamp) -> (Vec<UserCharacteristic>, Vec<RecordError>) {
    let mut chars = Vec::new();
    let mut errors = Vec::new();
    let p = Iri::constant;
    for (index, r) in records.iter().enumerate() {
        let mut fields: Vec<(Iri, Term)> = Vec::new();
        if let Some(name) = &r.name {
            fields.push((p(vocab::FOAF_NAME), Literal::string(name.as_str()).into()));
        }
        if let Some(home) = &r.workplace_homepage {
            fields.push((p(vocab::FOAF_WORKPLACE_HOMEPAGE), home.into()));
        }
        if r.interests.iter().any(|i| i.trim().is_empty()) {
            errors.push(RecordError {
                index,
                message: "interests must be non-empty strings".into(),
            });
            continue;
        }
        for i in &r.interests {
            fields.push((p(vocab::USEM_DECLARED_INTEREST), Literal::string(i.trim()).into()));
        }
        if fields.is_empty() {
            errors.push(RecordError {
                index,
                message: "record has no field besides user-iri".into(),
            });
            continue;
        }
        for (property, value) in fields {
            chars.push(
                UserCharacteristic::new(r.user_iri.clone(), property, value, source.clone(), now)
                    .expect("adapter properties are characteristic properties"),
            );
        }
    }
    (chars, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::observation_to_graph;
    use crate::rdf::serialize_turtle;
    use proptest::prelude::*;

    fn t(s: &str) -> Timestamp {
        Timestamp::parse(s).unwrap()
    }

    fn sample_tweet() -> TwitterRecord {
        TwitterRecord {
            id: 1234567,
            username_iri: Iri::constant("http://twitter.com/bob"),
            content: "Interesting article on Chopin's #hallucinations: http://bit.ly/y4Gfs5".into(),
            creation_time: t("2011-02-15 21:45:00"),
        }
    }

    #[test]
    fn tweet_becomes_posted_observation() {
        let out = ingest_twitter(&[sample_tweet()], &Iri::constant("http://twitter.com/"));
        assert_eq!(out.observations.len(), 1);
        let o = &out.observations[0];
        assert_eq!(o.activity.as_str(), vocab::IMREAL_POSTED);
        assert_eq!(o.object.as_str(), "http://imreal-project.eu/resource/twitter/1234567");
        assert_eq!(o.source.as_str(), "http://twitter.com/");
        assert_eq!(out.graph.len(), 4);
        assert!(ingest_twitter(&[], &o.source).observations.is_empty());
    }

    #[test]
    fn duplicate_ids_rejected_but_batch_continues() {
        let mut second = sample_tweet();
        second.content = "again".into();
        let mut third = sample_tweet();
        third.id = 7;
        let out = ingest_twitter(&[sample_tweet(), second, third], &Iri::constant("http://twitter.com/"));
        assert_eq!(out.observations.len(), 2);
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].index, 1);
    }

    #[test]
    fn bookmark_matches_listing() {
        let r = CiteULikeRecord {
            user_iri: Iri::constant("http://citeulike.org/bob"),
            article_iri: Iri::constant("http://www.citeulike.org/article/67893712"),
            tags: vec![],
            time: t("2011-02-15 22:05:00"),
        };
        let out = ingest_citeulike(&[r], &Iri::constant("http://citeulike.org/"));
        let o = &out.observations[0];
        assert_eq!(o.created, t("2011-02-15 22:05:00"));
        assert_eq!(o.activity.as_str(), vocab::IMREAL_BOOKMARKED);
        assert!(out.graph.is_empty());
    }

    #[test]
    fn linkedin_field_counts() {
        let src = Iri::constant("http://linkedin.com/");
        let now = t("2011-02-15 23:00:00");
        let bob = LinkedInRecord {
            user_iri: Iri::constant("http://linkedin.com/bob"),
            name: Some("Bob".into()),
            workplace_homepage: Some(Iri::constant("http://mh-hannover.de/")),
            interests: vec![],
        };
        let (c, e) = ingest_linkedin(std::slice::from_ref(&bob), &src, now);
        assert_eq!(c.len(), 2);
        assert!(e.is_empty());
        let interests = LinkedInRecord {
            name: None,
            workplace_homepage: None,
            interests: vec!["a".into(), "b".into(), "c".into()],
            ..bob.clone()
        };
        assert_eq!(ingest_linkedin(&[interests], &src, now).0.len(), 3);
        let bare = LinkedInRecord {
            name: None,
            workplace_homepage: None,
            ..bob
        };
        let (c, e) = ingest_linkedin(&[bare], &src, now);
        assert!(c.is_empty() && e.len() == 1);
    }

    fn tweet_strategy() -> impl Strategy<Value = TwitterRecord> {
        (1u64..1_000_000, "[a-z]{1,6}", "[ -~]{0,40}", 1i64..2_000_000_000).prop_map(|(id, user, content, secs)| TwitterRecord {
            id,
            username_iri: Iri::new(format!("http://twitter.com/{user}")).unwrap(),
            content,
            creation_time: Timestamp::from_epoch_seconds(secs),
        })
    }

    proptest! {
        #[test]
        fn counting_and_determinism(records in proptest::collection::vec(tweet_strategy(), 0..10)) {
            let unique: BTreeSet<u64> = records.iter().map(|r| r.id).collect();
            let src = Iri::constant("http://twitter.com/");
            let a = ingest_twitter(&records, &src);
            prop_assert_eq!(a.observations.len(), unique.len());
            prop_assert_eq!(a.graph.len(), 4 * unique.len());
            prop_assert!(a.observations.iter().all(|o| o.source == src));
            let b = ingest_twitter(&records, &src);
            prop_assert_eq!(serialize_turtle(&a.graph), serialize_turtle(&b.graph));
            for (x, y) in a.observations.iter().zip(&b.observations) {
                prop_assert_eq!(serialize_turtle(&observation_to_graph(x)), serialize_turtle(&observation_to_graph(y)));
            }
        }
    }
}
