//! Namespace and term constants for the vocabularies the engine reads and writes.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const DC: &str = "http://purl.org/dc/terms/";
pub const GC: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#";
pub const WI: &str = "http://purl.org/ontology/wi/core#";
pub const WO: &str = "http://purl.org/ontology/wo/core#";
pub const USEM: &str = "http://wis.ewi.tudelft.nl/rdf/usem#";
pub const IMREAL: &str = "http://imreal-project.eu/ns#";
pub const TW: &str = "http://imreal-project.eu/ns/twitter#";
pub const DBPEDIA: &str = "http://dbpedia.org/resource/";
pub const EX: &str = "http://example.org/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDF_OBJECT: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#object";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const SKOS_BROADER: &str = "http://www.w3.org/2004/02/skos/core#broader";
pub const SKOS_RELATED: &str = "http://www.w3.org/2004/02/skos/core#related";
pub const SKOS_PREF_LABEL: &str = "http://www.w3.org/2004/02/skos/core#prefLabel";
pub const SKOS_ALT_LABEL: &str = "http://www.w3.org/2004/02/skos/core#altLabel";
pub const DC_CREATED: &str = "http://purl.org/dc/terms/created";
pub const FOAF_PERSON: &str = "http://xmlns.com/foaf/0.1/Person";
pub const FOAF_NAME: &str = "http://xmlns.com/foaf/0.1/name";
pub const FOAF_WORKPLACE_HOMEPAGE: &str = "http://xmlns.com/foaf/0.1/workplaceHomepage";

pub const GC_OBSERVATION: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#Observation";
pub const GC_USER: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#user";
pub const GC_PREDICATE: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#predicate";
pub const GC_OBJECT: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#object";
pub const GC_CREATED: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#created";
pub const GC_CREATOR: &str = "http://wis.ewi.tudelft.nl/rdf/grapple-core.owl#creator";

pub const WI_TOPIC: &str = "http://purl.org/ontology/wi/core#topic";
pub const WI_PREFERENCE: &str = "http://purl.org/ontology/wi/core#preference";
pub const WI_WEIGHTED_INTEREST: &str = "http://purl.org/ontology/wi/core#WeightedInterest";
pub const WO_WEIGHT: &str = "http://purl.org/ontology/wo/core#weight";
pub const WO_WEIGHT_CLASS: &str = "http://purl.org/ontology/wo/core#Weight";
pub const WO_WEIGHT_VALUE: &str = "http://purl.org/ontology/wo/core#weight_value";
pub const WO_SCALE: &str = "http://purl.org/ontology/wo/core#scale";
pub const WO_SCALE_CLASS: &str = "http://purl.org/ontology/wo/core#Scale";
pub const WO_MIN_WEIGHT: &str = "http://purl.org/ontology/wo/core#min_weight";
pub const WO_MAX_WEIGHT: &str = "http://purl.org/ontology/wo/core#max_weight";
pub const EX_ASCALE: &str = "http://example.org/AScale";

pub const USEM_WHAT: &str = "http://wis.ewi.tudelft.nl/rdf/usem#what";
pub const USEM_WHEN: &str = "http://wis.ewi.tudelft.nl/rdf/usem#when";
pub const USEM_SOURCE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#source";
pub const USEM_KNOWLEDGE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#knowledge";
pub const USEM_WEIGHTED_KNOWLEDGE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#WeightedKnowledge";
pub const USEM_INFERRED: &str = "http://wis.ewi.tudelft.nl/rdf/usem#inferred";
pub const USEM_MENTIONS_CONCEPT: &str = "http://wis.ewi.tudelft.nl/rdf/usem#mentionsConcept";
pub const USEM_HAS_TOPIC: &str = "http://wis.ewi.tudelft.nl/rdf/usem#hasTopic";
pub const USEM_TAG: &str = "http://wis.ewi.tudelft.nl/rdf/usem#tag";
pub const USEM_DECLARED_INTEREST: &str = "http://wis.ewi.tudelft.nl/rdf/usem#declaredInterest";
pub const USEM_ALIAS: &str = "http://wis.ewi.tudelft.nl/rdf/usem#alias";
pub const USEM_UNIT_SCALE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#UnitScale";

/// Characteristic claims: one node per (user, property, value, source, time).
pub const USEM_CLAIM: &str = "http://wis.ewi.tudelft.nl/rdf/usem#Claim";
pub const USEM_USER: &str = "http://wis.ewi.tudelft.nl/rdf/usem#user";
pub const USEM_PROPERTY: &str = "http://wis.ewi.tudelft.nl/rdf/usem#property";
pub const USEM_VALUE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#value";
pub const USEM_OBSERVED_AT: &str = "http://wis.ewi.tudelft.nl/rdf/usem#observedAt";

/// Evidence nodes persisted alongside observations.
pub const USEM_EVIDENCE: &str = "http://wis.ewi.tudelft.nl/rdf/usem#Evidence";
pub const USEM_CONCEPT: &str = "http://wis.ewi.tudelft.nl/rdf/usem#concept";
pub const USEM_KIND: &str = "http://wis.ewi.tudelft.nl/rdf/usem#kind";
pub const USEM_POLARITY: &str = "http://wis.ewi.tudelft.nl/rdf/usem#polarity";
pub const USEM_WEIGHT: &str = "http://wis.ewi.tudelft.nl/rdf/usem#weight";
pub const USEM_TIME: &str = "http://wis.ewi.tudelft.nl/rdf/usem#time";
pub const USEM_ORIGIN: &str = "http://wis.ewi.tudelft.nl/rdf/usem#origin";

pub const IMREAL_ACCESSED: &str = "http://imreal-project.eu/ns#accessed";
pub const IMREAL_POSTED: &str = "http://imreal-project.eu/ns#posted";
pub const IMREAL_BOOKMARKED: &str = "http://imreal-project.eu/ns#bookmarked";
pub const IMREAL_TAGGED: &str = "http://imreal-project.eu/ns#tagged";
pub const IMREAL_ANSWERED_CORRECTLY: &str = "http://imreal-project.eu/ns#answeredCorrectly";
pub const IMREAL_ANSWERED_INCORRECTLY: &str = "http://imreal-project.eu/ns#answeredIncorrectly";

pub const TW_ID: &str = "http://imreal-project.eu/ns/twitter#id";
pub const TW_USERNAME: &str = "http://imreal-project.eu/ns/twitter#username";
pub const TW_CONTENT: &str = "http://imreal-project.eu/ns/twitter#content";
pub const TW_CREATION_TIME: &str = "http://imreal-project.eu/ns/twitter#creationTime";

/// Minting bases for resources the engine creates itself.
pub const OBSERVATION_BASE: &str = "http://imreal-project.eu/observation/";
pub const TWEET_BASE: &str = "http://imreal-project.eu/resource/twitter/";
pub const CLAIM_BASE: &str = "urn:usem:claim:";
pub const EVIDENCE_BASE: &str = "urn:usem:evidence:";

/// Prefix labels installed on graphs the engine emits.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("dbpedia", DBPEDIA),
    ("dc", DC),
    ("ex", EX),
    ("foaf", FOAF),
    ("gc", GC),
    ("imreal", IMREAL),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("skos", SKOS),
    ("tw", TW),
    ("usem", USEM),
    ("wi", WI),
    ("wo", WO),
    ("xsd", XSD),
];

/// Concatenates a namespace and a local name.
pub fn term(ns: &str, local: &str) -> String {
    let mut s = String::with_capacity(ns.len() + local.len());
    s.push_str(ns);
    s.push_str(local);
    s
}
