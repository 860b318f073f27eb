//! Symmetric word-pair relations: synonyms and antonyms.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use crate::error::{Error, Result, RowProblem};
use crate::lexicons::porter;

/// Unordered stem pairs with a symmetric neighbour index.
#[derive(Debug, Clone, Default)]
pub struct PairRelation {
    pairs: BTreeSet<(String, String)>,
    related: BTreeMap<String, BTreeSet<String>>,
    dropped_self_pairs: usize,
    skipped_rows: usize,
}

impl PairRelation {
    /// Inserts a pair; returns false for self-pairs, which are not stored.
    pub fn insert(&mut self, a: &str, b: &str) -> bool {
        if a == b {
            self.dropped_self_pairs += 1;
            return false;
        }
        let key = if a < b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        if self.pairs.insert(key) {
            self.related.entry(a.to_string()).or_default().insert(b.to_string());
            self.related.entry(b.to_string()).or_default().insert(a.to_string());
        }
        true
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        self.related.get(a).is_some_and(|s| s.contains(b))
    }

    pub fn related(&self, stem: &str) -> impl Iterator<Item = &str> {
        self.related
            .get(stem)
            .into_iter()
            .flat_map(|s| s.iter().map(String::as_str))
    }

    /// Pairs in canonical (lexicographically ordered) form.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn dropped_self_pairs(&self) -> usize {
        self.dropped_self_pairs
    }

    /// Rows whose words could not be stemmed (multiword entries etc.).
    pub fn skipped_rows(&self) -> usize {
        self.skipped_rows
    }

    fn load<R: BufRead>(reader: R, source_name: &str, stem_words: bool) -> Result<Self> {
        let mut rel = PairRelation::default();
        let mut problems = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            if fields.len() != 2 {
                problems.push(RowProblem {
                    line: i + 1,
                    message: format!("expected 2 tab-separated fields, found {}", fields.len()),
                });
                continue;
            }
            let normalize = |w: &str| {
                if stem_words {
                    porter::stem(w).ok()
                } else if !w.is_empty() && w.chars().all(char::is_alphabetic) {
                    Some(w.to_lowercase())
                } else {
                    None
                }
            };
            match (normalize(fields[0]), normalize(fields[1])) {
                (Some(a), Some(b)) => {
                    rel.insert(&a, &b);
                }
                _ => rel.skipped_rows += 1,
            }
        }
        if !problems.is_empty() {
            return Err(Error::Load {
                source_name: source_name.to_string(),
                problems,
            });
        }
        if rel.dropped_self_pairs > 0 {
            log::warn!("{source_name}: dropped {} self-pair(s)", rel.dropped_self_pairs);
        }
        Ok(rel)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon(pub PairRelation);

impl SynonymLexicon {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut rel = PairRelation::default();
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        SynonymLexicon(rel)
    }

    pub fn are_synonyms(&self, a: &str, b: &str) -> bool {
        self.0.contains(a, b)
    }

    pub fn synonyms(&self, stem: &str) -> impl Iterator<Item = &str> {
        self.0.related(stem)
    }

    pub fn relation(&self) -> &PairRelation {
        &self.0
    }
}

#[derive(Debug, Clone, Default)]
pub struct AntonymLexicon(pub PairRelation);

impl AntonymLexicon {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut rel = PairRelation::default();
        for (a, b) in pairs {
            rel.insert(a, b);
        }
        AntonymLexicon(rel)
    }

    /// Preferred antonym: the lexicographically smallest one.
    pub fn antonym(&self, stem: &str) -> Option<&str> {
        self.0.related(stem).next()
    }

    pub fn antonyms(&self, stem: &str) -> impl Iterator<Item = &str> {
        self.0.related(stem)
    }

    pub fn relation(&self) -> &PairRelation {
        &self.0
    }
}

/// Reads `word<TAB>word` synonym rows. With `stem_words` each word is run
/// through the stemmer; otherwise rows are taken as already stemmed.
pub fn load_synonyms<R: BufRead>(reader: R, source_name: &str, stem_words: bool) -> Result<SynonymLexicon> {
    PairRelation::load(reader, source_name, stem_words).map(SynonymLexicon)
}

pub fn load_antonyms<R: BufRead>(reader: R, source_name: &str, stem_words: bool) -> Result<AntonymLexicon> {
    PairRelation::load(reader, source_name, stem_words).map(AntonymLexicon)
}
