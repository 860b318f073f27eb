use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use tfmn::analysis::{emotional_profile, louvain, modularity, valence_aura, Aura};
use tfmn::ingest::{
    clean_text, filter_short, parse_documents, read_conllu, write_conllu, ParsedSentence, RawDocument, Token, Upos,
    WordLists,
};
use tfmn::lexicons::{AntonymLexicon, Emotion, EmotionLexicon, EmotionSet, ValenceLabel};
use tfmn::metrics::{closeness_all, local_clustering, mean_clustering, shortest_paths, DistanceMatrix};
use tfmn::network::{
    build_network, canonical_pair, concept_key, extract_syntactic_edges, token_class, BuildOptions, Concept, TokenClass,
};
use tfmn::stats::configuration_rewire;
use tfmn::{Graph, LayerMode, Lexicons, MultiplexNetwork};

const UPOS: [Upos; 17] = [
    Upos::Adj,
    Upos::Adp,
    Upos::Adv,
    Upos::Aux,
    Upos::Cconj,
    Upos::Det,
    Upos::Intj,
    Upos::Noun,
    Upos::Num,
    Upos::Part,
    Upos::Pron,
    Upos::Propn,
    Upos::Punct,
    Upos::Sconj,
    Upos::Sym,
    Upos::Verb,
    Upos::X,
];
const DEPRELS: [&str; 12] = [
    "nsubj", "obj", "obl", "amod", "advmod", "case", "det", "aux", "cop", "mark", "cc", "conj",
];
const WORDS: [&str; 16] = [
    "cat", "chair", "sit", "love", "weakness", "the", "on", "is", "not", "science", "women", "of", "and", "run",
    "happy", "we",
];

fn arb_sentence() -> impl Strategy<Value = ParsedSentence> {
    (1usize..9).prop_flat_map(|n| {
        let tokens = prop::collection::vec((0..WORDS.len(), 0..UPOS.len(), 0..DEPRELS.len(), any::<prop::sample::Index>()), n);
        tokens.prop_map(move |spec| {
            let tokens = spec
                .into_iter()
                .enumerate()
                .map(|(i, (w, u, d, h))| Token {
                    index: i + 1,
                    form: WORDS[w].to_string(),
                    lemma: WORDS[w].to_string(),
                    upos: UPOS[u],
                    // token 1 is the root; later tokens attach to an earlier one
                    head: if i == 0 { 0 } else { h.index(i) + 1 },
                    deprel: if i == 0 { "root".to_string() } else { DEPRELS[d].to_string() },
                })
                .collect();
            ParsedSentence {
                doc_id: "d".to_string(),
                tokens,
            }
        })
    })
}

fn arb_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Graph::from_edges(names, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p))
        })
    })
}

/// Two-layer network on `n` nodes with independent random layers.
fn arb_network() -> impl Strategy<Value = MultiplexNetwork> {
    (2usize..9).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            prop::collection::vec(0u8..3, m),
            prop::collection::vec(prop::option::of(1.0f64..9.0), n),
        )
            .prop_map(move |(layer, scores)| {
                let mut net = MultiplexNetwork::default();
                let names: Vec<String> = (0..n).map(|i| format!("w{}", (b'a' + i as u8) as char)).collect();
                for (name, score) in names.iter().zip(scores) {
                    let mut c = Concept::unlabeled(name);
                    if let Some(s) = score {
                        c.valence_score = Some(s);
                        c.valence_label = if s > 6.0 {
                            ValenceLabel::Positive
                        } else if s < 4.0 {
                            ValenceLabel::Negative
                        } else {
                            ValenceLabel::Neutral
                        };
                    }
                    net.nodes.insert(name.clone(), c);
                }
                let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                for ((i, j), l) in pairs.zip(layer) {
                    let p = canonical_pair(&names[i], &names[j]);
                    match l {
                        1 => {
                            net.syntactic.insert(p, 1);
                        }
                        2 => {
                            net.synonym.insert(p);
                        }
                        _ => {}
                    }
                }
                net
            })
    })
}

fn brute_force_clustering(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let k = g.degree(v);
            if k < 2 {
                return 0.0;
            }
            let mut tri = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b) {
                        tri += 1;
                    }
                }
            }
            tri as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

fn degrees_by_layer(net: &MultiplexNetwork) -> (BTreeMap<String, usize>, BTreeMap<String, usize>) {
    let count = |pairs: Vec<&(String, String)>| {
        let mut d: BTreeMap<String, usize> = net.nodes.keys().map(|k| (k.clone(), 0)).collect();
        for (a, b) in pairs {
            *d.get_mut(a).unwrap() += 1;
            *d.get_mut(b).unwrap() += 1;
        }
        d
    };
    (count(net.syntactic.keys().collect()), count(net.synonym.iter().collect()))
}

const SENTENCES: [&str; 8] = [
    "Love is weakness.",
    "The cat sat on the chair.",
    "Women in science are not rare.",
    "We love science and art.",
    "The man is not a god.",
    "Students learn mathematics at school.",
    "Scientists discover new patterns in data.",
    "Girls can become great engineers.",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cleaning_is_idempotent(text in "[ -~]{0,60}") {
        let once = clean_text(&text);
        prop_assert_eq!(clean_text(&once), once);
    }

    #[test]
    fn short_filter_is_idempotent(texts in prop::collection::vec("[a-z ]{0,30}", 0..8), min in 0usize..6) {
        let docs: Vec<RawDocument> = texts.iter().enumerate().map(|(i, t)| RawDocument::new(format!("d{i}"), t.clone())).collect();
        let (kept, _) = filter_short(docs, min);
        let (again, dropped) = filter_short(kept.clone(), min);
        prop_assert_eq!(again, kept);
        prop_assert_eq!(dropped, 0);
    }

    #[test]
    fn conllu_round_trip(sentences in prop::collection::vec(arb_sentence(), 1..4)) {
        let text = write_conllu(&sentences);
        let back = read_conllu(text.as_bytes(), "d").unwrap();
        prop_assert!(back.rejected.is_empty());
        prop_assert_eq!(back.sentences, sentences);
    }

    #[test]
    fn contraction_keeps_content_connected(s in arb_sentence()) {
        let lists = WordLists::bundled();
        let out = extract_syntactic_edges(&s, lists);
        // content stems of one tree form a single component
        if out.concepts.len() > 1 {
            let names: Vec<&str> = out.concepts.iter().map(String::as_str).collect();
            let g = Graph::from_named_edges(names, out.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())));
            let (_, sizes) = g.components();
            prop_assert_eq!(sizes.len(), 1);
        }
        for c in &out.concepts {
            let from_content = s
                .tokens
                .iter()
                .any(|t| concept_key(t).as_deref() == Some(c.as_str()) && token_class(t, lists) == TokenClass::Content);
            prop_assert!(from_content, "{c}");
        }
    }

    #[test]
    fn parsed_text_never_yields_closed_class_nodes(picks in prop::collection::vec(0..SENTENCES.len(), 1..6)) {
        let lists = WordLists::bundled();
        let text: Vec<&str> = picks.iter().map(|&i| SENTENCES[i]).collect();
        let parsed = parse_documents(vec![RawDocument::new("d", text.join(" "))], 1, lists).sentences;
        for s in &parsed {
            for c in extract_syntactic_edges(s, lists).concepts {
                prop_assert!(!lists.is_closed_function_word(&c) || lists.is_negation(&c), "{c}");
            }
        }
    }

    #[test]
    fn closeness_is_invariant_under_relabeling(g in arb_graph(8), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut tfmn::seed::rng(perm_seed));
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let relabeled = Graph::from_edges(names, g.edges().into_iter().map(|(a, b)| (perm[a], perm[b])));
        let before = closeness_all(&g);
        let after = closeness_all(&relabeled);
        for i in 0..n {
            prop_assert_eq!(before[i], after[perm[i]]);
        }
    }

    #[test]
    fn max_closeness_is_min_total_distance(g in arb_graph(8)) {
        let (_, sizes) = g.components();
        prop_assume!(sizes.len() == 1 && g.node_count() > 1);
        let d = DistanceMatrix::of(&g);
        let n = g.node_count();
        let totals: Vec<u32> = (0..n).map(|i| (0..n).map(|j| d.get(i, j).unwrap()).sum()).collect();
        let c = closeness_all(&g);
        let best = (0..n).max_by(|&a, &b| c[a].partial_cmp(&c[b]).unwrap()).unwrap();
        prop_assert_eq!(totals[best], *totals.iter().min().unwrap());
    }

    #[test]
    fn aggregate_distances_never_exceed_single_layers(net in arb_network()) {
        let agg = shortest_paths(&net, LayerMode::Aggregate);
        for mode in [LayerMode::SyntacticOnly, LayerMode::SynonymOnly] {
            let single = shortest_paths(&net, mode);
            let n = net.node_count();
            for i in 0..n {
                for j in 0..n {
                    if let Some(s) = single.get(i, j) {
                        prop_assert!(agg.get(i, j).unwrap() <= s);
                    }
                }
            }
        }
    }

    #[test]
    fn clustering_matches_triangle_enumeration(g in arb_graph(8)) {
        let brute = brute_force_clustering(&g);
        let local = local_clustering(&g);
        for (a, b) in brute.iter().zip(&local) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let mean = mean_clustering(&g);
        prop_assert!((0.0..=1.0).contains(&mean));
    }

    #[test]
    fn rewiring_preserves_layer_degrees(net in arb_network(), seed in any::<u64>()) {
        let (r, _) = configuration_rewire(&net, seed, 10);
        prop_assert_eq!(degrees_by_layer(&r), degrees_by_layer(&net));
        prop_assert_eq!(r.syntactic.len(), net.syntactic.len());
        prop_assert_eq!(r.synonym.len(), net.synonym.len());
        prop_assert!(r.validate().is_ok());
    }

    #[test]
    fn louvain_beats_singletons(g in arb_graph(8), seed in any::<u64>()) {
        prop_assume!(g.edge_count() > 0);
        let p = louvain(&g, seed).unwrap();
        let singletons: Vec<usize> = (0..g.node_count()).collect();
        prop_assert!(p.modularity >= modularity(&g, &singletons) - 1e-12);
    }

    #[test]
    fn build_ignores_sentence_order(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let lists = WordLists::bundled();
        let docs = vec![RawDocument::new("d", SENTENCES.join(" "))];
        let parsed = parse_documents(docs, 1, lists).sentences;
        let mut shuffled = parsed.clone();
        shuffled.shuffle(&mut tfmn::seed::rng(seed));
        let opts = BuildOptions::default();
        let (a, _) = build_network(&parsed, &Lexicons::default(), lists, &opts).unwrap();
        let (b, _) = build_network(&shuffled, &Lexicons::default(), lists, &opts).unwrap();
        prop_assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn aura_counts_neighbour_labels(net in arb_network()) {
        for target in net.nodes.keys() {
            let r = valence_aura(&net, target).unwrap();
            let labels: Vec<ValenceLabel> = net.neighbors(target).iter().map(|n| net.nodes[*n].valence_label).collect();
            let count = |l| labels.iter().filter(|x| **x == l).count();
            prop_assert_eq!(r.positive, count(ValenceLabel::Positive));
            prop_assert_eq!(r.negative, count(ValenceLabel::Negative));
            prop_assert_eq!(r.neutral, count(ValenceLabel::Neutral));
            prop_assert_eq!(r.unrated, count(ValenceLabel::Unrated));
            if r.positive + r.negative + r.neutral == 0 {
                prop_assert_eq!(r.aura, Aura::Undetermined);
            }
        }
    }

    #[test]
    fn profile_without_negation_is_a_plain_sum(net in arb_network(), bits in prop::collection::vec(0u8..=255, 8)) {
        let mut net = net;
        let stems: Vec<String> = net.nodes.keys().cloned().collect();
        let entries: Vec<(String, EmotionSet)> = stems
            .iter()
            .zip(bits)
            .map(|(s, b)| (s.clone(), Emotion::ALL.iter().enumerate().filter(|(i, _)| b >> i & 1 == 1).map(|(_, e)| *e).collect()))
            .collect();
        for (s, set) in &entries {
            net.nodes.get_mut(s).unwrap().emotions = *set;
        }
        let lex = EmotionLexicon::from_entries(entries.iter().map(|(s, e)| (s.as_str(), *e))).unwrap();
        let target = &stems[0];
        let p = emotional_profile(&net, target, &lex, &AntonymLexicon::default()).unwrap();
        let mut expected: BTreeMap<Emotion, usize> = Emotion::ALL.iter().map(|e| (*e, 0)).collect();
        for n in net.neighbors(target) {
            for e in net.nodes[n].emotions.iter() {
                *expected.get_mut(&e).unwrap() += 1;
            }
        }
        prop_assert_eq!(p.counts, expected);
        let set: BTreeSet<_> = p.contributions.iter().filter_map(|c| c.negated_from.clone()).collect();
        prop_assert!(set.is_empty());
    }
}
