use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, RowProblem};
use crate::lexicons::porter;

/// The eight basic emotions of the word-emotion association layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emotion {
    Anger,
    Disgust,
    Fear,
    Trust,
    Joy,
    Sadness,
    Surprise,
    Anticipation,
}

impl Emotion {
    pub const ALL: [Emotion; 8] = [
        Emotion::Anger,
        Emotion::Disgust,
        Emotion::Fear,
        Emotion::Trust,
        Emotion::Joy,
        Emotion::Sadness,
        Emotion::Surprise,
        Emotion::Anticipation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Anger => "anger",
            Emotion::Disgust => "disgust",
            Emotion::Fear => "fear",
            Emotion::Trust => "trust",
            Emotion::Joy => "joy",
            Emotion::Sadness => "sadness",
            Emotion::Surprise => "surprise",
            Emotion::Anticipation => "anticipation",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Emotion::ALL
            .into_iter()
            .find(|e| e.name() == lower)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown emotion {s:?}")))
    }
}

impl Serialize for Emotion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Emotion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the eight emotions, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EmotionSet(u8);

impl EmotionSet {
    pub const EMPTY: EmotionSet = EmotionSet(0);

    pub fn insert(&mut self, e: Emotion) {
        self.0 |= e.bit();
    }

    pub fn contains(self, e: Emotion) -> bool {
        self.0 & e.bit() != 0
    }

    pub fn union(self, other: EmotionSet) -> EmotionSet {
        EmotionSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Emotion> {
        Emotion::ALL.into_iter().filter(move |e| self.contains(*e))
    }
}

impl FromIterator<Emotion> for EmotionSet {
    fn from_iter<I: IntoIterator<Item = Emotion>>(iter: I) -> Self {
        let mut set = EmotionSet::EMPTY;
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl Serialize for EmotionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(Emotion::name))
    }
}

impl<'de> Deserialize<'de> for EmotionSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(deserializer)?;
        names
            .iter()
            .map(|n| n.parse::<Emotion>().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Stem-level emotion associations.
#[derive(Debug, Clone, Default)]
pub struct EmotionLexicon {
    entries: BTreeMap<String, EmotionSet>,
    ignored_rows: usize,
}

impl EmotionLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, EmotionSet)>,
        S: AsRef<str>,
    {
        let mut lex = EmotionLexicon::default();
        for (word, set) in entries {
            let stem = porter::stem(word.as_ref())?;
            let slot = lex.entries.entry(stem).or_default();
            *slot = slot.union(set);
        }
        Ok(lex)
    }

    /// Emotions of a stem; `None` when the stem is not in the lexicon.
    pub fn get(&self, stem: &str) -> Option<EmotionSet> {
        self.entries.get(stem).copied()
    }

    /// Emotions of a stem, empty when unknown.
    pub fn emotions(&self, stem: &str) -> EmotionSet {
        self.get(stem).unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows skipped because their emotion was outside the eight-emotion set
    /// or their word could not be stemmed.
    pub fn ignored_rows(&self) -> usize {
        self.ignored_rows
    }
}

/// Reads `word<TAB>emotion<TAB>flag` rows. Rows naming anything other than
/// the eight emotions (e.g. the `positive`/`negative` sentiment rows) are
/// skipped and counted.
pub fn load_emotion_lexicon<R: BufRead>(reader: R, source_name: &str) -> Result<EmotionLexicon> {
    let mut lex = EmotionLexicon::default();
    let mut problems = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            problems.push(RowProblem {
                line: lineno,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
            continue;
        }
        let flag = match fields[2] {
            "0" => false,
            "1" => true,
            other => {
                problems.push(RowProblem {
                    line: lineno,
                    message: format!("flag must be 0 or 1, found {other:?}"),
                });
                continue;
            }
        };
        let Ok(emotion) = fields[1].parse::<Emotion>() else {
            lex.ignored_rows += 1;
            continue;
        };
        let Ok(stem) = porter::stem(fields[0]) else {
            lex.ignored_rows += 1;
            continue;
        };
        let slot = lex.entries.entry(stem).or_default();
        if flag {
            slot.insert(emotion);
        }
    }
    if !problems.is_empty() {
        return Err(Error::Load {
            source_name: source_name.to_string(),
            problems,
        });
    }
    if lex.entries.is_empty() {
        return Err(Error::NoEntries(source_name.to_string()));
    }
    if lex.ignored_rows > 0 {
        log::info!("{source_name}: skipped {} row(s) outside the eight emotions", lex.ignored_rows);
    }
    Ok(lex)
}
