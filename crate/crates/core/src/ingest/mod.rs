//! Corpus reading, cleaning and parsing into dependency trees.

mod clean;
mod conllu;
mod heuristic;
mod types;
mod wordlists;

use rayon::prelude::*;
use serde::Serialize;

pub use clean::{clean_document, clean_text, filter_short, read_corpus, split_sentences, word_count};
pub use conllu::{read_conllu, write_conllu, ConlluCorpus, ConlluReader, SentenceOutcome, SentenceRejection};
pub use heuristic::{heuristic_parse, HeuristicParser, Unparsed};
pub use types::{ParsedSentence, RawDocument, Token, Upos};
pub use wordlists::WordLists;

/// Counters from the clean/filter/split/parse pipeline.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub documents_in: usize,
    pub documents_dropped_short: usize,
    pub sentences_parsed: usize,
    pub sentences_unparsed: usize,
}

#[derive(Debug, Clone, Default)]
pub struct IngestedCorpus {
    pub sentences: Vec<ParsedSentence>,
    pub unparsed: Vec<Unparsed>,
    pub report: IngestReport,
}

/// Cleans, filters and heuristically parses raw documents.
///
/// Documents are processed in parallel; output order follows input order.
pub fn parse_documents(docs: Vec<RawDocument>, min_words: usize, lists: &WordLists) -> IngestedCorpus {
    let documents_in = docs.len();
    let cleaned: Vec<RawDocument> = docs.par_iter().map(clean_document).collect();
    let (kept, dropped) = filter_short(cleaned, min_words);
    let parser = HeuristicParser::new(lists);
    let per_doc: Vec<Vec<Result<ParsedSentence, Unparsed>>> = kept
        .par_iter()
        .map(|doc| {
            split_sentences(&doc.text)
                .iter()
                .map(|s| parser.parse(s, &doc.id))
                .collect()
        })
        .collect();

    let mut out = IngestedCorpus {
        report: IngestReport {
            documents_in,
            documents_dropped_short: dropped,
            ..IngestReport::default()
        },
        ..IngestedCorpus::default()
    };
    for outcome in per_doc.into_iter().flatten() {
        match outcome {
            Ok(s) => out.sentences.push(s),
            Err(u) => out.unparsed.push(u),
        }
    }
    out.report.sentences_parsed = out.sentences.len();
    out.report.sentences_unparsed = out.unparsed.len();
    out
}
