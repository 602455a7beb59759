use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use super::EnrichError;
use crate::mint::short_hash;
use crate::model::Timestamp;
use crate::rdf::{Graph, Iri, Term};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    /// Short user-authored text whose embedded URLs are followed.
    Message,
    Page,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub iri: Iri,
    pub text: String,
    pub fetched_at: Timestamp,
    pub kind: DocumentKind,
}

/// Maps resource IRIs to documents. `None` is a miss, distinct from a
/// document with empty text.
pub trait ResourceResolver: Send + Sync {
    fn resolve(&self, iri: &Iri) -> Option<Document>;
}

/// File name for `iri` inside a fixture directory.
pub fn fixture_file_name(iri: &Iri) -> String {
    format!("{}.txt", short_hash(iri.as_str()))
}

/// Plain-text documents in a directory, indexed by `index.tsv`
/// (`IRI<TAB>file name` per line).
#[derive(Debug, Clone)]
pub struct FixtureResolver {
    dir: PathBuf,
    index: BTreeMap<Iri, String>,
}

impl FixtureResolver {
    pub const INDEX: &'static str = "index.tsv";

    pub fn open(dir: impl AsRef<Path>) -> Result<Self, EnrichError> {
        let dir = dir.as_ref().to_path_buf();
        let index_path = dir.join(Self::INDEX);
        let text = fs::read_to_string(&index_path).map_err(|e| EnrichError::Io(index_path.display().to_string(), e.to_string()))?;
        let mut index = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| EnrichError::IndexLine(n + 1, msg);
            let (iri, file) = line.split_once('\t').ok_or_else(|| bad("expected IRI<TAB>file".into()))?;
            let iri = Iri::new(iri.trim()).map_err(|e| bad(e.to_string()))?;
            let file = file.trim();
            if file.contains(['/', '\\']) || file.starts_with('.') {
                return Err(bad(format!("file name '{file}' must be a plain name")));
            }
            if !dir.join(file).is_file() {
                return Err(bad(format!("missing fixture file '{file}'")));
            }
            index.insert(iri, file.to_owned());
        }
        Ok(FixtureResolver { dir, index })
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

impl ResourceResolver for FixtureResolver {
    fn resolve(&self, iri: &Iri) -> Option<Document> {
        let file = self.index.get(iri)?;
        let text = fs::read_to_string(self.dir.join(file)).ok()?;
        Some(Document {
            iri: iri.clone(),
            text,
            fetched_at: Timestamp::EPOCH,
            kind: DocumentKind::Page,
        })
    }
}

/// Resolves resources described in a graph: `tw:content` gives a message,
/// and `usem:tag` literals are appended as hint text.
#[derive(Debug, Clone)]
pub struct GraphResolver {
    graph: Graph,
}

impl GraphResolver {
    pub fn new(graph: Graph) -> Self {
        GraphResolver { graph }
    }
}

impl ResourceResolver for GraphResolver {
    fn resolve(&self, iri: &Iri) -> Option<Document> {
        let subject = Term::Iri(iri.clone());
        let literals = |p: &str| -> Vec<String> {
            self.graph
                .objects(&subject, &Iri::constant(p))
                .into_iter()
                .filter_map(|t| t.as_literal().map(|l| l.lexical().to_owned()))
                .collect()
        };
        let content = literals(vocab::TW_CONTENT);
        let tags = literals(vocab::USEM_TAG);
        if content.is_empty() && tags.is_empty() {
            return None;
        }
        let kind = if content.is_empty() { DocumentKind::Page } else { DocumentKind::Message };
        let text = content.into_iter().chain(tags).collect::<Vec<_>>().join("\n");
        Some(Document {
            iri: iri.clone(),
            text,
            fetched_at: Timestamp::EPOCH,
            kind,
        })
    }
}

/// Asks every resolver and concatenates the hits in order. The result is a
/// message if any hit is.
pub struct ChainResolver<'a> {
    resolvers: Vec<&'a dyn ResourceResolver>,
}

impl<'a> ChainResolver<'a> {
    pub fn new(resolvers: Vec<&'a dyn ResourceResolver>) -> Self {
        ChainResolver { resolvers }
    }
}

impl ResourceResolver for ChainResolver<'_> {
    fn resolve(&self, iri: &Iri) -> Option<Document> {
        let hits: Vec<Document> = self.resolvers.iter().filter_map(|r| r.resolve(iri)).collect();
        let first = hits.first()?.clone();
        let kind = if hits.iter().any(|d| d.kind == DocumentKind::Message) {
            DocumentKind::Message
        } else {
            DocumentKind::Page
        };
        let text = hits.iter().map(|d| d.text.as_str()).filter(|t| !t.is_empty()).collect::<Vec<_>>().join("\n");
        Some(Document {
            iri: first.iri,
            text,
            fetched_at: hits.iter().map(|d| d.fetched_at).max().unwrap_or(Timestamp::EPOCH),
            kind,
        })
    }
}

/// Fixed in-memory map, mainly for tests.
#[derive(Debug, Clone, Default)]
pub struct MapResolver {
    docs: BTreeMap<Iri, Document>,
}

impl MapResolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, iri: Iri, text: impl Into<String>, kind: DocumentKind) {
        self.docs.insert(
            iri.clone(),
            Document {
                iri,
                text: text.into(),
                fetched_at: Timestamp::EPOCH,
                kind,
            },
        );
    }
}

impl ResourceResolver for MapResolver {
    fn resolve(&self, iri: &Iri) -> Option<Document> {
        self.docs.get(iri).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{Literal, Triple};

    #[test]
    fn fixture_directory_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let iri = Iri::constant("http://bit.ly/y4Gfs5");
        let name = fixture_file_name(&iri);
        assert_eq!(name.len(), 20);
        fs::write(dir.path().join(&name), "about epilepsy").unwrap();
        fs::write(dir.path().join(FixtureResolver::INDEX), format!("{iri}\t{name}\n")).unwrap();
        let r = FixtureResolver::open(dir.path()).unwrap();
        assert_eq!(r.resolve(&iri).unwrap().text, "about epilepsy");
        assert!(r.resolve(&Iri::constant("http://other")).is_none());
    }

    #[test]
    fn index_must_point_at_files() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(FixtureResolver::INDEX), "http://a\tmissing.txt\n").unwrap();
        assert!(matches!(FixtureResolver::open(dir.path()), Err(EnrichError::IndexLine(1, _))));
        fs::write(dir.path().join(FixtureResolver::INDEX), "http://a\t../etc/passwd\n").unwrap();
        assert!(FixtureResolver::open(dir.path()).is_err());
    }

    #[test]
    fn chain_merges_message_and_page() {
        let tweet = Iri::constant("http://imreal-project.eu/resource/twitter/1");
        let mut g = Graph::new();
        g.insert(Triple::spo(&tweet, &Iri::constant(vocab::TW_CONTENT), Literal::string("hello")));
        let graph = GraphResolver::new(g);
        let mut map = MapResolver::new();
        map.insert(tweet.clone(), "extra", DocumentKind::Page);
        let chain = ChainResolver::new(vec![&graph, &map]);
        let d = chain.resolve(&tweet).unwrap();
        assert_eq!(d.kind, DocumentKind::Message);
        assert_eq!(d.text, "hello\nextra");
        assert!(chain.resolve(&Iri::constant("http://none")).is_none());
    }
}
