//! Closed-class word lists, plus the small open-class lexicon the
//! rule-based parser uses to tell verbs and modifiers from nouns.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::LazyLock;

use crate::error::Result;

macro_rules! bundled {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/wordlists/", $name))
    };
}

#[derive(Debug, Clone, Default)]
pub struct WordLists {
    pub determiners: HashSet<String>,
    pub prepositions: HashSet<String>,
    pub auxiliaries: HashSet<String>,
    pub copulas: HashSet<String>,
    pub negations: HashSet<String>,
    pub conjunctions: HashSet<String>,
    pub subordinators: HashSet<String>,
    pub pronouns: HashSet<String>,
    pub verbs: HashSet<String>,
    pub adjectives: HashSet<String>,
    pub adverbs: HashSet<String>,
    pub nouns: HashSet<String>,
    /// Irregular inflected form -> lemma.
    pub irregular: HashMap<String, String>,
}

fn parse_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

fn parse_pairs(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(form, lemma)| (form.trim().to_lowercase(), lemma.trim().to_lowercase()))
        .collect()
}

static BUNDLED: LazyLock<WordLists> = LazyLock::new(|| WordLists {
    determiners: parse_list(bundled!("determiners.txt")),
    prepositions: parse_list(bundled!("prepositions.txt")),
    auxiliaries: parse_list(bundled!("auxiliaries.txt")),
    copulas: parse_list(bundled!("copulas.txt")),
    negations: parse_list(bundled!("negations.txt")),
    conjunctions: parse_list(bundled!("conjunctions.txt")),
    subordinators: parse_list(bundled!("subordinators.txt")),
    pronouns: parse_list(bundled!("pronouns.txt")),
    verbs: parse_list(bundled!("verbs.txt")),
    adjectives: parse_list(bundled!("adjectives.txt")),
    adverbs: parse_list(bundled!("adverbs.txt")),
    nouns: parse_list(bundled!("nouns.txt")),
    irregular: parse_pairs(bundled!("irregular_verbs.tsv")),
});

impl WordLists {
    pub fn bundled() -> &'static WordLists {
        &BUNDLED
    }

    /// Starts from the bundled lists and replaces every list for which
    /// `dir` holds a file of the same name.
    pub fn from_dir(dir: &Path) -> Result<WordLists> {
        let mut lists = WordLists::bundled().clone();
        let targets: [(&str, &mut HashSet<String>); 12] = [
            ("determiners.txt", &mut lists.determiners),
            ("prepositions.txt", &mut lists.prepositions),
            ("auxiliaries.txt", &mut lists.auxiliaries),
            ("copulas.txt", &mut lists.copulas),
            ("negations.txt", &mut lists.negations),
            ("conjunctions.txt", &mut lists.conjunctions),
            ("subordinators.txt", &mut lists.subordinators),
            ("pronouns.txt", &mut lists.pronouns),
            ("verbs.txt", &mut lists.verbs),
            ("adjectives.txt", &mut lists.adjectives),
            ("adverbs.txt", &mut lists.adverbs),
            ("nouns.txt", &mut lists.nouns),
        ];
        for (name, slot) in targets {
            let path = dir.join(name);
            if path.exists() {
                *slot = parse_list(&fs::read_to_string(path)?);
            }
        }
        let irregular = dir.join("irregular_verbs.tsv");
        if irregular.exists() {
            lists.irregular = parse_pairs(&fs::read_to_string(irregular)?);
        }
        Ok(lists)
    }

    /// Replaces the negation list with the contents of a one-word-per-line file.
    pub fn with_negations_file(mut self, path: &Path) -> Result<WordLists> {
        self.negations = parse_list(&fs::read_to_string(path)?);
        Ok(self)
    }

    pub fn is_negation(&self, word: &str) -> bool {
        self.negations.contains(word)
    }

    /// Words that never carry meaning on their own, whatever tag a parser
    /// gave them: determiners, prepositions, conjunctions, subordinators.
    pub fn is_closed_function_word(&self, word: &str) -> bool {
        self.determiners.contains(word)
            || self.prepositions.contains(word)
            || self.conjunctions.contains(word)
            || self.subordinators.contains(word)
    }
}
