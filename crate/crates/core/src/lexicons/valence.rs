use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, RowProblem};
use crate::lexicons::porter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValenceLabel {
    Positive,
    Neutral,
    Negative,
    Unrated,
}

impl ValenceLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ValenceLabel::Positive => "positive",
            ValenceLabel::Neutral => "neutral",
            ValenceLabel::Negative => "negative",
            ValenceLabel::Unrated => "unrated",
        }
    }
}

impl fmt::Display for ValenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ValenceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(ValenceLabel::Positive),
            "neutral" => Ok(ValenceLabel::Neutral),
            "negative" => Ok(ValenceLabel::Negative),
            "unrated" => Ok(ValenceLabel::Unrated),
            other => Err(Error::InvalidArgument(format!("unknown valence label {other:?}"))),
        }
    }
}

/// Closed interval of admissible ratings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValenceScale {
    pub min: f64,
    pub max: f64,
}

impl Default for ValenceScale {
    fn default() -> Self {
        ValenceScale { min: 1.0, max: 9.0 }
    }
}

impl ValenceScale {
    pub fn contains(&self, score: f64) -> bool {
        score >= self.min && score <= self.max
    }
}

#[derive(Debug, Clone)]
pub struct ValenceOptions {
    pub word_column: String,
    pub score_column: String,
    pub scale: ValenceScale,
}

impl Default for ValenceOptions {
    fn default() -> Self {
        ValenceOptions {
            word_column: "Word".to_string(),
            score_column: "V.Mean.Sum".to_string(),
            scale: ValenceScale::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValenceEntry {
    /// Mean rating over the words sharing this stem.
    pub score: f64,
    /// Number of rated words averaged into `score`.
    pub words: usize,
}

/// Stem-level valence norms with quartile bounds over the stem scores.
#[derive(Debug, Clone)]
pub struct ValenceLexicon {
    entries: BTreeMap<String, ValenceEntry>,
    q1: f64,
    q3: f64,
    scale: ValenceScale,
}

/// Quantile by linear interpolation between order statistics (type 7).
/// `sorted` must be nonempty and ascending.
pub fn quantile_linear(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

impl ValenceLexicon {
    /// Groups word ratings by stem and averages them. Words that cannot be
    /// stemmed are skipped.
    pub fn from_word_scores<I, S>(scores: I, scale: ValenceScale) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
        for (word, score) in scores {
            if !scale.contains(score) {
                return Err(Error::InvalidArgument(format!(
                    "score {score} for {:?} outside [{}, {}]",
                    word.as_ref(),
                    scale.min,
                    scale.max
                )));
            }
            let Ok(stem) = porter::stem(word.as_ref()) else {
                continue;
            };
            let slot = sums.entry(stem).or_insert((0.0, 0));
            slot.0 += score;
            slot.1 += 1;
        }
        if sums.is_empty() {
            return Err(Error::NoEntries("valence norms".to_string()));
        }
        let entries: BTreeMap<String, ValenceEntry> = sums
            .into_iter()
            .map(|(stem, (sum, n))| {
                (
                    stem,
                    ValenceEntry {
                        score: sum / n as f64,
                        words: n,
                    },
                )
            })
            .collect();
        let mut sorted: Vec<f64> = entries.values().map(|e| e.score).collect();
        sorted.sort_by(f64::total_cmp);
        Ok(ValenceLexicon {
            q1: quantile_linear(&sorted, 0.25),
            q3: quantile_linear(&sorted, 0.75),
            entries,
            scale,
        })
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn q3(&self) -> f64 {
        self.q3
    }

    pub fn scale(&self) -> ValenceScale {
        self.scale
    }

    pub fn entry(&self, stem: &str) -> Option<&ValenceEntry> {
        self.entries.get(stem)
    }

    pub fn score(&self, stem: &str) -> Option<f64> {
        self.entries.get(stem).map(|e| e.score)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ValenceEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Quartile class of a score: above q3 positive, below q1 negative,
    /// neutral on the closed interquartile range.
    pub fn classify(&self, score: f64) -> ValenceLabel {
        if score > self.q3 {
            ValenceLabel::Positive
        } else if score < self.q1 {
            ValenceLabel::Negative
        } else {
            ValenceLabel::Neutral
        }
    }

    pub fn label(&self, stem: &str) -> ValenceLabel {
        self.score(stem)
            .map_or(ValenceLabel::Unrated, |s| self.classify(s))
    }
}

/// Reads a valence-norms CSV with a header row.
pub fn load_valence_norms<R: Read>(
    reader: R,
    options: &ValenceOptions,
    source_name: &str,
) -> Result<ValenceLexicon> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| Error::MissingColumn {
                source_name: source_name.to_string(),
                column: name.to_string(),
            })
    };
    let word_idx = column(&options.word_column)?;
    let score_idx = column(&options.score_column)?;

    let mut rows = Vec::new();
    let mut problems = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        // header is line 1
        let line = i + 2;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                problems.push(RowProblem {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let (Some(word), Some(raw)) = (record.get(word_idx), record.get(score_idx)) else {
            problems.push(RowProblem {
                line,
                message: "missing field".to_string(),
            });
            continue;
        };
        match raw.trim().parse::<f64>() {
            Ok(score) if options.scale.contains(score) => rows.push((word.trim().to_string(), score)),
            Ok(score) => problems.push(RowProblem {
                line,
                message: format!(
                    "score {score} outside [{}, {}]",
                    options.scale.min, options.scale.max
                ),
            }),
            Err(_) => problems.push(RowProblem {
                line,
                message: format!("unparsable score {raw:?}"),
            }),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Load {
            source_name: source_name.to_string(),
            problems,
        });
    }
    let skipped = rows
        .iter()
        .filter(|(w, _)| porter::stem(w).is_err())
        .count();
    if skipped > 0 {
        log::warn!("{source_name}: skipped {skipped} non-alphabetic word(s)");
    }
    ValenceLexicon::from_word_scores(rows, options.scale).map_err(|e| match e {
        Error::NoEntries(_) => Error::NoEntries(source_name.to_string()),
        other => other,
    })
}
