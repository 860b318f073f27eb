//! Tweet-style text cleaning and corpus I/O.

use std::collections::HashSet;
use std::io::BufRead;
use std::sync::LazyLock;

use regex::Regex;

use crate::error::{Error, Result, RowProblem};
use crate::ingest::types::RawDocument;

static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b(?:https?://|www\.)\S*").unwrap());
static MENTION: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\B@\w+").unwrap());
static PICTOGRAPH: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"[\p{Extended_Pictographic}\p{Emoji_Modifier}\p{Regional_Indicator}\u{200D}\u{FE0E}\u{FE0F}\u{20E3}]")
        .unwrap()
});

fn clean_once(text: &str) -> String {
    let text = PICTOGRAPH.replace_all(text, " ");
    let text = text.replace('#', "");
    let text = URL.replace_all(&text, " ");
    let text = MENTION.replace_all(&text, " ");
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Strips hashtag marks (keeping the word), URLs, @-mentions and
/// pictographic codepoints, then collapses whitespace.
pub fn clean_text(text: &str) -> String {
    let mut current = clean_once(text);
    // removals can splice new matches together ("@a@b"); run to a fixed point
    loop {
        let next = clean_once(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

pub fn clean_document(doc: &RawDocument) -> RawDocument {
    RawDocument {
        id: doc.id.clone(),
        text: clean_text(&doc.text),
    }
}

/// Whitespace-delimited tokens containing at least one letter or digit.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace()
        .filter(|w| w.chars().any(char::is_alphanumeric))
        .count()
}

/// Drops documents with fewer than `min_words` words. Returns the kept
/// documents and the number dropped.
pub fn filter_short(docs: Vec<RawDocument>, min_words: usize) -> (Vec<RawDocument>, usize) {
    let before = docs.len();
    let kept: Vec<RawDocument> = docs
        .into_iter()
        .filter(|d| word_count(&d.text) >= min_words)
        .collect();
    let dropped = before - kept.len();
    (kept, dropped)
}

static SENTENCE_END: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"[.!?]+\s+").unwrap());

/// Splits on `.`, `!` or `?` followed by whitespace. Abbreviations are not
/// special-cased.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    for m in SENTENCE_END.find_iter(text) {
        let end = m.start() + m.as_str().trim_end().len();
        out.push(text[start..end].trim().to_string());
        start = m.end();
    }
    out.push(text[start..].trim().to_string());
    out.retain(|s| !s.is_empty());
    out
}

/// Reads `id<TAB>text` lines. Blank lines and `#` comments are skipped.
pub fn read_corpus<R: BufRead>(reader: R, source_name: &str) -> Result<Vec<RawDocument>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    let mut problems = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((id, text)) = line.split_once('\t') else {
            problems.push(RowProblem {
                line: i + 1,
                message: "missing id<TAB> prefix".to_string(),
            });
            continue;
        };
        let id = id.trim();
        if id.is_empty() || !seen.insert(id.to_string()) {
            problems.push(RowProblem {
                line: i + 1,
                message: format!("empty or duplicate document id {id:?}"),
            });
            continue;
        }
        docs.push(RawDocument::new(id, text.trim()));
    }
    if !problems.is_empty() {
        return Err(Error::Load {
            source_name: source_name.to_string(),
            problems,
        });
    }
    Ok(docs)
}
