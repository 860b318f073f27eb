use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::{ParsedSentence, Token, Upos, WordLists};
use crate::lexicons::porter::stem_lowercase;
use crate::lexicons::{Lexicons, SynonymLexicon, ValenceLabel};
use crate::network::{canonical_pair, Concept, MultiplexNetwork, Provenance, StemPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenClass {
    Content,
    Function,
}

const FUNCTION_DEPRELS: [&str; 7] = ["aux", "cop", "case", "mark", "det", "cc", "punct"];

/// Lowercases, maps "n't" to "not", keeps letters only and stems.
pub fn normalize_word(word: &str) -> Option<String> {
    let lower = word.to_lowercase();
    let lower = if lower == "n't" { "not".to_string() } else { lower };
    let letters: String = lower.chars().filter(|c| c.is_alphabetic()).collect();
    (!letters.is_empty()).then(|| stem_lowercase(&letters))
}

/// Node key for a token: its lemma (or surface form when the lemma is
/// missing), normalized and stemmed.
pub fn concept_key(token: &Token) -> Option<String> {
    let base = if token.lemma.is_empty() || token.lemma == "_" {
        &token.form
    } else {
        &token.lemma
    };
    normalize_word(base)
}

fn is_negation(token: &Token, lists: &WordLists) -> bool {
    lists.is_negation(&token.form.to_lowercase()) || lists.is_negation(&token.lemma.to_lowercase())
}

pub fn token_class(token: &Token, lists: &WordLists) -> TokenClass {
    if is_negation(token, lists) {
        return TokenClass::Content;
    }
    let base_rel = token.deprel.split(':').next().unwrap_or("");
    if FUNCTION_DEPRELS.contains(&base_rel) {
        return TokenClass::Function;
    }
    match token.upos {
        Upos::Pron if lists.subordinators.contains(&token.lemma.to_lowercase()) => TokenClass::Function,
        Upos::Noun | Upos::Propn | Upos::Verb | Upos::Adj | Upos::Adv | Upos::Pron => TokenClass::Content,
        _ => TokenClass::Function,
    }
}

/// Per-sentence extraction result.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceEdges {
    pub concepts: BTreeSet<String>,
    pub edges: BTreeSet<StemPair>,
}

/// Contracts function tokens out of the dependency tree and returns the
/// remaining links as undirected stem pairs.
pub fn extract_syntactic_edges(sentence: &ParsedSentence, lists: &WordLists) -> SentenceEdges {
    let n = sentence.tokens.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, t) in sentence.tokens.iter().enumerate() {
        if t.head > 0 {
            adj[i].insert(t.head - 1);
            adj[t.head - 1].insert(i);
        }
    }
    let keys: Vec<Option<String>> = sentence.tokens.iter().map(concept_key).collect();
    let content: Vec<bool> = sentence
        .tokens
        .iter()
        .zip(&keys)
        .map(|(t, k)| k.is_some() && token_class(t, lists) == TokenClass::Content)
        .collect();

    // Removing each function node once, clique-connecting its current
    // neighbours, reaches the fixed point: later removals see earlier links.
    for f in (0..n).filter(|&i| !content[i]) {
        let nbrs: Vec<usize> = std::mem::take(&mut adj[f]).into_iter().collect();
        for &a in &nbrs {
            adj[a].remove(&f);
        }
        for (x, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[x + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }

    let mut out = SentenceEdges::default();
    for i in (0..n).filter(|&i| content[i]) {
        let ki = keys[i].as_deref().unwrap_or_default();
        out.concepts.insert(ki.to_string());
        for &j in adj[i].iter().filter(|&&j| j > i) {
            let kj = keys[j].as_deref().unwrap_or_default();
            if ki != kj {
                out.edges.insert(canonical_pair(ki, kj));
            }
        }
    }
    out
}

/// Synonym links among existing nodes. Pairs already linked syntactically
/// still get a synonym link.
pub fn add_synonym_layer<'a>(
    nodes: impl IntoIterator<Item = &'a str>,
    lexicon: &SynonymLexicon,
) -> BTreeSet<StemPair> {
    let nodes: BTreeSet<&str> = nodes.into_iter().collect();
    lexicon
        .relation()
        .pairs()
        .filter(|(a, b)| nodes.contains(a) && nodes.contains(b))
        .map(|(a, b)| canonical_pair(a, b))
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub corpus_id: String,
    pub config_hash: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValenceCounts {
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
    pub unrated: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BuildSummary {
    pub nodes: usize,
    pub syntactic_edges: usize,
    pub synonym_edges: usize,
    pub aggregate_edges: usize,
    pub sentences: usize,
    /// Sentences with fewer than two content tokens.
    pub sentences_without_edges: usize,
    pub valence: ValenceCounts,
}

impl BuildSummary {
    pub fn of(net: &MultiplexNetwork) -> Self {
        let mut valence = ValenceCounts::default();
        for c in net.nodes.values() {
            match c.valence_label {
                ValenceLabel::Positive => valence.positive += 1,
                ValenceLabel::Negative => valence.negative += 1,
                ValenceLabel::Neutral => valence.neutral += 1,
                ValenceLabel::Unrated => valence.unrated += 1,
            }
        }
        BuildSummary {
            nodes: net.nodes.len(),
            syntactic_edges: net.syntactic.len(),
            synonym_edges: net.synonym.len(),
            aggregate_edges: net.aggregate_edges().len(),
            sentences: net.provenance.sentences,
            sentences_without_edges: 0,
            valence,
        }
    }
}

/// Builds the two-layer network from parsed sentences.
pub fn build_network(
    sentences: &[ParsedSentence],
    lexicons: &Lexicons,
    lists: &WordLists,
    options: &BuildOptions,
) -> Result<(MultiplexNetwork, BuildSummary)> {
    if sentences.is_empty() {
        return Err(Error::NoSentences);
    }
    let per_sentence: Vec<SentenceEdges> =
        sentences.par_iter().map(|s| extract_syntactic_edges(s, lists)).collect();

    let mut concepts: BTreeSet<String> = BTreeSet::new();
    let mut syntactic: BTreeMap<StemPair, u32> = BTreeMap::new();
    let mut without_edges = 0;
    for s in per_sentence {
        if s.edges.is_empty() {
            without_edges += 1;
        }
        concepts.extend(s.concepts);
        for e in s.edges {
            *syntactic.entry(e).or_insert(0) += 1;
        }
    }

    let nodes: BTreeMap<String, Concept> = concepts
        .into_iter()
        .map(|stem| {
            let mut c = Concept::unlabeled(stem.clone());
            if let Some(v) = &lexicons.valence {
                c.valence_label = v.label(&stem);
                c.valence_score = v.score(&stem);
            }
            if let Some(e) = &lexicons.emotions {
                c.emotions = e.emotions(&stem);
            }
            (stem, c)
        })
        .collect();
    let synonym = match &lexicons.synonyms {
        Some(lex) => add_synonym_layer(nodes.keys().map(String::as_str), lex),
        None => BTreeSet::new(),
    };
    let net = MultiplexNetwork {
        nodes,
        syntactic,
        synonym,
        provenance: Provenance {
            corpus_id: options.corpus_id.clone(),
            config_hash: options.config_hash.clone(),
            seed: options.seed,
            sentences: sentences.len(),
            edge_direction: "undirected".to_string(),
        },
    };
    let mut summary = BuildSummary::of(&net);
    summary.sentences_without_edges = without_edges;
    Ok((net, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{heuristic_parse, read_conllu};
    use crate::lexicons::{Emotion, EmotionLexicon, EmotionSet, ValenceLexicon, ValenceScale};

    fn edges_of(text: &str) -> Vec<(String, String)> {
        let s = heuristic_parse(text, "t").unwrap();
        extract_syntactic_edges(&s, WordLists::bundled()).edges.into_iter().collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        let set: BTreeSet<_> = list.iter().map(|(a, b)| canonical_pair(a, b)).collect();
        set.into_iter().collect()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(edges_of("love is weakness"), pairs(&[("love", "weak")]));
        assert_eq!(edges_of("the cat sat on the chair"), pairs(&[("cat", "sit"), ("chair", "sit")]));
        assert_eq!(edges_of("man is not god"), pairs(&[("man", "not"), ("god", "not")]));
    }

    #[test]
    fn chained_function_words_contract_to_fixed_point() {
        // word1 <- has <- been <- on -> word2, with every middle node a function word
        let text = "1\tx\tx\tNOUN\t_\t_\t2\tnsubj\t_\t_\n\
                    2\thas\thave\tAUX\t_\t_\t0\troot\t_\t_\n\
                    3\tbeen\tbe\tAUX\t_\t_\t2\taux\t_\t_\n\
                    4\ton\ton\tADP\t_\t_\t3\tcase\t_\t_\n\
                    5\ttable\ttable\tNOUN\t_\t_\t4\tobl\t_\t_\n";
        let corpus = read_conllu(text.as_bytes(), "d").unwrap();
        let got = extract_syntactic_edges(&corpus.sentences[0], WordLists::bundled());
        assert_eq!(got.edges.into_iter().collect::<Vec<_>>(), pairs(&[("tabl", "x")]));
    }

    #[test]
    fn single_content_token_gives_no_edges() {
        let s = heuristic_parse("the cats", "t");
        if let Ok(s) = s {
            assert!(extract_syntactic_edges(&s, WordLists::bundled()).edges.is_empty());
        }
        let text = "1\tthe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n2\tcats\tcat\tNOUN\t_\t_\t0\troot\t_\t_\n";
        let corpus = read_conllu(text.as_bytes(), "d").unwrap();
        let got = extract_syntactic_edges(&corpus.sentences[0], WordLists::bundled());
        assert!(got.edges.is_empty());
        assert_eq!(got.concepts.into_iter().collect::<Vec<_>>(), ["cat"]);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_word("n't").as_deref(), Some("not"));
        assert_eq!(normalize_word("Self-Organisation").as_deref(), Some("selforganis"));
        assert_eq!(normalize_word("42"), None);
    }

    #[test]
    fn synonym_layer_needs_both_endpoints() {
        let lex = SynonymLexicon::from_pairs([("famou", "notabl")]);
        assert_eq!(add_synonym_layer(["famou", "notabl"], &lex).len(), 1);
        assert!(add_synonym_layer(["famou"], &lex).is_empty());
        assert!(add_synonym_layer(["famou", "notabl"], &SynonymLexicon::default()).is_empty());
    }

    #[test]
    fn build_single_sentence_with_labels() {
        let s = heuristic_parse("love is weakness", "d").unwrap();
        let valence = ValenceLexicon::from_word_scores(
            [("love", 8.0), ("weakness", 2.5), ("table", 5.0), ("chair", 5.1)],
            ValenceScale::default(),
        )
        .unwrap();
        let emotions = EmotionLexicon::from_entries([("love", EmotionSet::from_iter([Emotion::Joy]))]).unwrap();
        let lex = Lexicons {
            valence: Some(valence),
            emotions: Some(emotions),
            ..Default::default()
        };
        let (net, summary) = build_network(&[s], &lex, WordLists::bundled(), &BuildOptions::default()).unwrap();
        assert_eq!(summary.nodes, 2);
        assert_eq!(summary.syntactic_edges, 1);
        assert_eq!(net.nodes["love"].valence_label, ValenceLabel::Positive);
        assert_eq!(net.nodes["weak"].valence_label, ValenceLabel::Negative);
        assert!(net.nodes["love"].emotions.contains(Emotion::Joy));
        assert_eq!(summary.valence.positive, 1);
        net.validate().unwrap();
    }

    #[test]
    fn empty_corpus_rejected() {
        let err = build_network(&[], &Lexicons::default(), WordLists::bundled(), &BuildOptions::default());
        assert!(matches!(err, Err(Error::NoSentences)));
    }

    #[test]
    fn occurrence_counts_sentences() {
        let a = heuristic_parse("love is weakness", "d").unwrap();
        let b = heuristic_parse("love is weakness", "e").unwrap();
        let (net, _) =
            build_network(&[a, b], &Lexicons::default(), WordLists::bundled(), &BuildOptions::default()).unwrap();
        assert_eq!(net.syntactic[&canonical_pair("love", "weak")], 2);
    }
}
