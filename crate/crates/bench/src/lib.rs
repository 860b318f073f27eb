//! Fixture loading shared by the benchmarks.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use tfmn::ingest::{parse_documents, read_corpus, ParsedSentence, WordLists};
use tfmn::lexicons::{load_antonyms, load_emotion_lexicon, load_synonyms, load_valence_norms, ValenceOptions};
use tfmn::network::{build_network, BuildOptions};
use tfmn::{Lexicons, MultiplexNetwork};

pub fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn open(rel: &str) -> BufReader<File> {
    BufReader::new(File::open(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}")))
}

pub fn demo_lexicons() -> Lexicons {
    Lexicons {
        valence: Some(load_valence_norms(open("lexicons/valence.csv"), &ValenceOptions::default(), "valence.csv").unwrap()),
        emotions: Some(load_emotion_lexicon(open("lexicons/emotions.tsv"), "emotions.tsv").unwrap()),
        synonyms: Some(load_synonyms(open("lexicons/synonyms.tsv"), "synonyms.tsv", true).unwrap()),
        antonyms: Some(load_antonyms(open("lexicons/antonyms.tsv"), "antonyms.tsv", true).unwrap()),
    }
}

/// Parsed sentences of a tab-separated corpus under the data directory.
pub fn sentences(rel: &str) -> Vec<ParsedSentence> {
    let docs = read_corpus(open(rel), rel).unwrap();
    parse_documents(docs, 1, WordLists::bundled()).sentences
}

pub fn network(sentences: &[ParsedSentence], lexicons: &Lexicons) -> MultiplexNetwork {
    let opts = BuildOptions {
        corpus_id: "bench".into(),
        config_hash: String::new(),
        seed: 0,
    };
    build_network(sentences, lexicons, WordLists::bundled(), &opts).unwrap().0
}
