use super::{ModelError, Timestamp};
use crate::rdf::{Graph, Iri, Literal, Term, Triple};
use crate::vocab;

/// A timestamped (user, activity, object) usage event.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Observation {
    pub id: Iri,
    pub user: Iri,
    pub activity: Iri,
    pub object: Iri,
    pub created: Timestamp,
    /// The application that made the observation.
    pub creator: Option<Iri>,
    /// The system the event originated from.
    pub source: Iri,
}

impl Observation {
    /// Source assumed when the graph carries no explicit `usem:source`: the
    /// creator if present, else the origin (`scheme://host/`) of the user IRI.
    pub fn implied_source(user: &Iri, creator: Option<&Iri>) -> Iri {
        if let Some(c) = creator {
            return c.clone();
        }
        match url::Url::parse(user.as_str()) {
            Ok(u) if u.has_host() => {
                Iri::new(format!("{}://{}/", u.scheme(), u.host_str().unwrap_or_default())).unwrap_or_else(|_| user.clone())
            }
            _ => user.clone(),
        }
    }
}

const ACTIVITY: &[&str] = &[vocab::USEM_WHAT, vocab::GC_PREDICATE];
const OBJECT: &[&str] = &[vocab::GC_OBJECT, vocab::RDF_OBJECT];
const CREATED: &[&str] = &[vocab::GC_CREATED, vocab::USEM_WHEN, vocab::DC_CREATED];

/// Reads the observation `id` from `g`.
///
/// The activity may be given as `usem:what` or `gc:predicate`, the object as
/// `gc:object` or `rdf:object`, and the time as `gc:created`, `usem:when` or
/// `dc:created`.
pub fn observation_from_graph(g: &Graph, id: &Iri) -> Result<Observation, ModelError> {
    let subject = Term::Iri(id.clone());
    let user = required_iri(g, &subject, &[vocab::GC_USER])?;
    let activity = required_iri(g, &subject, ACTIVITY)?;
    let object = required_iri(g, &subject, OBJECT)?;
    let created_term = single(g, &subject, CREATED)?;
    let created = match created_term.as_ref().and_then(Term::as_literal) {
        Some(lit) => Timestamp::parse(lit.lexical())?,
        None => {
            return Err(match created_term {
                Some(_) => ModelError::InvalidTimestamp(created_term.map(|t| t.to_string()).unwrap_or_default()),
                None => missing(id, vocab::GC_CREATED),
            })
        }
    };
    if created == Timestamp::EPOCH {
        return Err(ModelError::ZeroTimestamp);
    }
    let creator = optional_iri(g, &subject, vocab::GC_CREATOR)?;
    let source = match optional_iri(g, &subject, vocab::USEM_SOURCE)? {
        Some(s) => s,
        None => Observation::implied_source(&user, creator.as_ref()),
    };
    Ok(Observation {
        id: id.clone(),
        user,
        activity,
        object,
        created,
        creator,
        source,
    })
}

/// Writes `o` as `gc:user`, `usem:what`, `gc:object`, `gc:created` and, when
/// present, `gc:creator`. `usem:source` is added only when it differs from
/// the implied source.
pub fn observation_to_graph(o: &Observation) -> Graph {
    let mut g = Graph::with_standard_prefixes();
    let p = Iri::constant;
    g.insert(Triple::spo(&o.id, &p(vocab::GC_USER), &o.user));
    g.insert(Triple::spo(&o.id, &p(vocab::USEM_WHAT), &o.activity));
    g.insert(Triple::spo(&o.id, &p(vocab::GC_OBJECT), &o.object));
    g.insert(Triple::spo(&o.id, &p(vocab::GC_CREATED), Literal::string(o.created.to_string())));
    if let Some(c) = &o.creator {
        g.insert(Triple::spo(&o.id, &p(vocab::GC_CREATOR), c));
    }
    if o.source != Observation::implied_source(&o.user, o.creator.as_ref()) {
        g.insert(Triple::spo(&o.id, &p(vocab::USEM_SOURCE), &o.source));
    }
    g
}

/// Every IRI subject carrying a `gc:user` triple, read as an observation.
/// Subjects that fail to parse are returned as errors alongside.
pub fn observations_in_graph(g: &Graph) -> (Vec<Observation>, Vec<(Iri, ModelError)>) {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    let mut ids: Vec<Iri> = g
        .subjects(&Iri::constant(vocab::GC_USER), None)
        .into_iter()
        .filter_map(|t| t.as_iri().cloned())
        .collect();
    ids.dedup();
    for id in ids {
        match observation_from_graph(g, &id) {
            Ok(o) => ok.push(o),
            Err(e) => bad.push((id, e)),
        }
    }
    (ok, bad)
}

fn missing(id: &Iri, property: &str) -> ModelError {
    ModelError::MissingField {
        subject: id.to_string(),
        property: property.to_owned(),
    }
}

/// The single value of the first of `properties` present on `subject`.
fn single(g: &Graph, subject: &Term, properties: &[&str]) -> Result<Option<Term>, ModelError> {
    for p in properties {
        let values = g.objects(subject, &Iri::constant(p));
        match values.len() {
            0 => continue,
            1 => return Ok(values.into_iter().next()),
            _ => {
                return Err(ModelError::Conflicting {
                    subject: subject.to_string(),
                    property: (*p).to_owned(),
                })
            }
        }
    }
    Ok(None)
}

fn required_iri(g: &Graph, subject: &Term, properties: &[&str]) -> Result<Iri, ModelError> {
    match single(g, subject, properties)? {
        Some(Term::Iri(i)) => Ok(i),
        Some(_) => Err(ModelError::NotAnIri {
            subject: subject.to_string(),
            property: properties[0].to_owned(),
        }),
        None => Err(ModelError::MissingField {
            subject: subject.as_iri().map(|i| i.to_string()).unwrap_or_else(|| subject.to_string()),
            property: properties[0].to_owned(),
        }),
    }
}

fn optional_iri(g: &Graph, subject: &Term, property: &str) -> Result<Option<Iri>, ModelError> {
    match single(g, subject, &[property])? {
        Some(Term::Iri(i)) => Ok(Some(i)),
        Some(_) => Err(ModelError::NotAnIri {
            subject: subject.to_string(),
            property: property.to_owned(),
        }),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;
    use proptest::prelude::*;

    const OBS1: &str = r#"
@prefix gc: <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#> .
@prefix imreal: <http://imreal-project.eu/ns#> .
<http://imreal-project.eu/observation/1>
  gc:user <http://bob.myopenid.com>;
  gc:predicate imreal:accessed;
  gc:object <http://imreal-project.eu/resource/1234567>;
  gc:created "2011-02-15 20:10:30" .
"#;

    fn obs1_id() -> Iri {
        Iri::constant("http://imreal-project.eu/observation/1")
    }

    #[test]
    fn reads_click_observation() {
        let g = parse_turtle(OBS1, None).unwrap();
        let o = observation_from_graph(&g, &obs1_id()).unwrap();
        assert_eq!(o.user.as_str(), "http://bob.myopenid.com");
        assert_eq!(o.activity.as_str(), vocab::IMREAL_ACCESSED);
        assert_eq!(o.created, Timestamp::parse("2011-02-15 20:10:30").unwrap());
        assert_eq!(o.source.as_str(), "http://bob.myopenid.com/");
        assert_eq!(o.creator, None);
    }

    #[test]
    fn missing_user_is_named() {
        let g = parse_turtle(&OBS1.replace("gc:user <http://bob.myopenid.com>;", ""), None).unwrap();
        match observation_from_graph(&g, &obs1_id()) {
            Err(ModelError::MissingField { property, .. }) => assert_eq!(property, vocab::GC_USER),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_timestamp_is_reported() {
        let g = parse_turtle(&OBS1.replace("2011-02-15 20:10:30", "yesterday"), None).unwrap();
        assert!(matches!(observation_from_graph(&g, &obs1_id()), Err(ModelError::InvalidTimestamp(_))));
    }

    #[test]
    fn alternative_property_names() {
        let doc = r#"
@prefix usem: <http://wis.ewi.tudelft.nl/rdf/usem#> .
@prefix gc: <http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
<http://o/1> gc:user <http://u> ; usem:what <http://a> ; rdf:object <http://x> ; usem:when "2011-01-01 00:00:01" .
"#;
        let o = observation_from_graph(&parse_turtle(doc, None).unwrap(), &Iri::constant("http://o/1")).unwrap();
        assert_eq!(o.object.as_str(), "http://x");
    }

    #[test]
    fn triple_counts() {
        let g = parse_turtle(OBS1, None).unwrap();
        let mut o = observation_from_graph(&g, &obs1_id()).unwrap();
        assert_eq!(observation_to_graph(&o).len(), 4);
        o.creator = Some(Iri::constant("http://imreal-project.eu/simulator"));
        o.source = o.creator.clone().unwrap();
        let g5 = observation_to_graph(&o);
        assert_eq!(g5.len(), 5);
        assert!(g5.iter().any(|t| t.predicate().as_str() == vocab::GC_CREATOR));
    }

    fn iri_strategy() -> impl Strategy<Value = Iri> {
        ("(http|https|urn)", "[a-z]{1,8}", "[a-z0-9/]{0,8}").prop_map(|(s, h, p)| {
            if s == "urn" {
                Iri::new(format!("urn:{h}:{p}x")).unwrap()
            } else {
                Iri::new(format!("{s}://{h}.org/{p}")).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn graph_round_trip(
            id in iri_strategy(), user in iri_strategy(), activity in iri_strategy(), object in iri_strategy(),
            secs in 1i64..4_000_000_000, creator in proptest::option::of(iri_strategy()),
            source in proptest::option::of(iri_strategy()),
        ) {
            let source = source.unwrap_or_else(|| Observation::implied_source(&user, creator.as_ref()));
            let o = Observation { id: id.clone(), user, activity, object, created: Timestamp::from_epoch_seconds(secs), creator, source };
            let g = observation_to_graph(&o);
            prop_assert_eq!(observation_from_graph(&g, &id).unwrap(), o);
        }
    }
}
