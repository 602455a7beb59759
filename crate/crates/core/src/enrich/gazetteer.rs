use std::collections::{BTreeMap, HashMap};

use super::text::{char_slice, tokenize};
use super::EnrichError;
use crate::model::ConceptTaxonomy;
use crate::rdf::Iri;

/// Longest surface form considered, in tokens.
pub const MAX_WINDOW: usize = 4;

/// Surface-form dictionary mapping case-folded token sequences to candidate
/// concepts with priors.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    entries: HashMap<Vec<String>, BTreeMap<Iri, f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mention {
    pub surface: String,
    /// Character offsets, end exclusive.
    pub start: usize,
    pub end: usize,
    /// Sorted by descending prior, then ascending IRI.
    pub candidates: Vec<(Iri, f64)>,
}

impl Gazetteer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry. The surface is tokenized and case-folded; repeated
    /// (surface, concept) pairs keep the larger prior.
    pub fn add(&mut self, surface: &str, concept: Iri, prior: f64) -> Result<(), EnrichError> {
        if !(prior > 0.0 && prior <= 1.0) {
            return Err(EnrichError::InvalidPrior(surface.to_owned(), prior));
        }
        let key: Vec<String> = tokenize(surface).into_iter().map(|t| t.folded).collect();
        if key.is_empty() || key.len() > MAX_WINDOW {
            return Err(EnrichError::InvalidSurface(surface.to_owned()));
        }
        let slot = self.entries.entry(key).or_default().entry(concept).or_insert(prior);
        *slot = slot.max(prior);
        Ok(())
    }

    /// Parses `surface<TAB>concept IRI<TAB>prior` lines. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_tsv(text: &str) -> Result<Self, EnrichError> {
        let mut gz = Gazetteer::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let bad = |msg: &str| EnrichError::GazetteerLine(line_no, msg.to_owned());
            if cols.len() != 3 {
                return Err(bad("expected 3 tab-separated columns"));
            }
            let concept = Iri::new(cols[1].trim()).map_err(|e| bad(&e.to_string()))?;
            let prior: f64 = cols[2].trim().parse().map_err(|_| bad("prior is not a number"))?;
            gz.add(cols[0].trim(), concept, prior).map_err(|e| bad(&e.to_string()))?;
        }
        Ok(gz)
    }

    /// Fails if any entry points outside `t`.
    pub fn check_against(&self, t: &ConceptTaxonomy) -> Result<(), EnrichError> {
        let mut unknown: Vec<&Iri> = self
            .entries
            .values()
            .flat_map(|m| m.keys())
            .filter(|c| !t.contains(c))
            .collect();
        unknown.sort();
        unknown.dedup();
        match unknown.first() {
            None => Ok(()),
            Some(c) => Err(EnrichError::UnknownConcept((*c).clone())),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Candidates for a case-folded token sequence.
    pub fn lookup(&self, key: &[String]) -> Option<Vec<(Iri, f64)>> {
        let m = self.entries.get(key)?;
        let mut c: Vec<(Iri, f64)> = m.iter().map(|(k, v)| (k.clone(), *v)).collect();
        c.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        Some(c)
    }
}

/// Greedy left-to-right longest match over token windows of up to
/// [`MAX_WINDOW`] tokens. Mentions never overlap.
pub fn extract_entities(text: &str, gz: &Gazetteer) -> Vec<Mention> {
    let tokens = tokenize(text);
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let longest = (1..=MAX_WINDOW.min(tokens.len() - i)).rev().find_map(|len| {
            let key: Vec<String> = tokens[i..i + len].iter().map(|t| t.folded.clone()).collect();
            gz.lookup(&key).map(|c| (len, c))
        });
        match longest {
            Some((len, candidates)) => {
                let (start, end) = (tokens[i].start, tokens[i + len - 1].end);
                out.push(Mention {
                    surface: char_slice(text, start, end),
                    start,
                    end,
                    candidates,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    out
}

/// Highest-prior candidate; ties go to the smallest IRI. Independent of
/// candidate order.
pub fn identify_entity(m: &Mention) -> Iri {
    m.candidates
        .iter()
        .fold(None::<&(Iri, f64)>, |best, c| match best {
            Some(b) if b.1 > c.1 || (b.1 == c.1 && b.0 <= c.0) => Some(b),
            _ => Some(c),
        })
        .map(|(iri, _)| iri.clone())
        .expect("mention has at least one candidate")
}
