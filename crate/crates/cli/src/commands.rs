use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;
use tfmn::analysis::{
    classify_edges, emotional_profile, louvain, neighborhood_subgraph, valence_aura, SubgraphMode,
};
use tfmn::ingest::{parse_documents, read_conllu, read_corpus, IngestReport, ParsedSentence, RawDocument, WordLists};
use tfmn::lexicons::{
    load_antonyms, load_emotion_lexicon, load_synonyms, load_valence_norms, AntonymLexicon, EmotionLexicon,
    ValenceOptions,
};
use tfmn::metrics::{centrality_report, rank_concepts, write_centrality_csv, Graph};
use tfmn::network::{build_network, normalize_word, read_graphml, write_graphml, BuildOptions, BuildSummary};
use tfmn::seed::{derive_seed, sha256_hex};
use tfmn::stats::{
    benchmark_topic_relevance, clustering_null, load_free_associations, BenchmarkOptions, TopicRanking,
};
use tfmn::{Lexicons, MultiplexNetwork};

use crate::config::{CorpusFormat, Settings};
use crate::error::CliError;
use crate::output::{file_safe, Stamp, Writer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    Json,
    Graphml,
    /// edge list `source,target,layer,count,edge_class`
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SubgraphKind {
    /// target plus direct neighbours
    Neighbors,
    /// target's Louvain community
    Community,
}

/// Whether a command resolved everything it was asked about.
pub struct Outcome {
    pub written: Vec<PathBuf>,
}

fn writer(s: &Settings) -> Result<Writer, CliError> {
    Writer::new(
        &s.out,
        Stamp {
            config_hash: s.config_hash.clone(),
            seed: s.seed,
        },
    )
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(|e| CliError::io(path, e))
}

fn required<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a PathBuf, CliError> {
    p.as_ref().ok_or_else(|| CliError::Config {
        message: format!("no {what} given (flag or config key {what})"),
    })
}

fn source_name(p: &Path) -> String {
    p.display().to_string()
}

pub fn load_lexicons(s: &Settings) -> Result<Lexicons, CliError> {
    let mut lex = Lexicons::default();
    if let Some(p) = &s.valence {
        let opts = ValenceOptions {
            word_column: s.valence_word_column.clone(),
            score_column: s.valence_score_column.clone(),
            ..ValenceOptions::default()
        };
        lex.valence = Some(load_valence_norms(open(p)?, &opts, &source_name(p))?);
    }
    if let Some(p) = &s.emotions {
        lex.emotions = Some(load_emotion_lexicon(open(p)?, &source_name(p))?);
    }
    if let Some(p) = &s.synonyms {
        lex.synonyms = Some(load_synonyms(open(p)?, &source_name(p), true)?);
    }
    if let Some(p) = &s.antonyms {
        lex.antonyms = Some(load_antonyms(open(p)?, &source_name(p), true)?);
    }
    Ok(lex)
}

fn word_lists(s: &Settings) -> Result<WordLists, CliError> {
    let lists = WordLists::bundled().clone();
    Ok(match &s.negations {
        Some(p) => lists.with_negations_file(p)?,
        None => lists,
    })
}

pub fn load_network(path: &Path) -> Result<MultiplexNetwork, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let is_graphml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("graphml"));
    Ok(if is_graphml {
        read_graphml(&text)?
    } else {
        MultiplexNetwork::from_json(&text)?
    })
}

/// Identifies the input network by name and content, not by location.
fn network_stamp(net: &MultiplexNetwork, path: &Path) -> Result<serde_json::Value, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(json!({
        "file": path.file_name().map(|n| n.to_string_lossy().into_owned()),
        "sha256": sha256_hex(&bytes),
        "corpus_id": net.provenance.corpus_id,
        "config_hash": net.provenance.config_hash,
    }))
}

/// Requested words resolved to stems present in the network.
struct Targets {
    found: Vec<(String, String)>,
    unknown: Vec<String>,
}

fn resolve_targets(net: &MultiplexNetwork, words: &[String]) -> Result<Targets, CliError> {
    if words.is_empty() {
        return Err(CliError::Config {
            message: "at least one --target is required".into(),
        });
    }
    let mut t = Targets {
        found: Vec::new(),
        unknown: Vec::new(),
    };
    for w in words {
        match normalize_word(w).filter(|s| net.contains(s)) {
            Some(stem) => t.found.push((w.clone(), stem)),
            None => {
                log::warn!("target {w:?} is not in the network");
                t.unknown.push(w.clone());
            }
        }
    }
    Ok(t)
}

fn all_unknown(t: &Targets) -> Result<(), CliError> {
    if t.found.is_empty() {
        Err(CliError::UnknownTargets(t.unknown.clone()))
    } else {
        Ok(())
    }
}

// ---- build ----

#[derive(Serialize)]
struct NetworkEntry {
    corpus_id: String,
    network: String,
    graphml: String,
    #[serde(flatten)]
    summary: BuildSummary,
}

fn read_sentences(s: &Settings, corpus: &Path, lists: &WordLists) -> Result<(Vec<ParsedSentence>, serde_json::Value), CliError> {
    match s.format {
        CorpusFormat::Text => {
            let docs = read_corpus(open(corpus)?, &source_name(corpus))?;
            let parsed = parse_documents(docs, s.min_words, lists);
            let unparsed = serde_json::to_value(&parsed.unparsed).map_err(tfmn::Error::from)?;
            Ok((parsed.sentences, json!({ "report": parsed.report, "unparsed": unparsed })))
        }
        CorpusFormat::Conllu => {
            let stem = corpus.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let c = read_conllu(open(corpus)?, &stem)?;
            let rejected: Vec<_> = c.rejected.iter().map(|r| json!({"line": r.line, "reason": r.reason})).collect();
            let report = IngestReport {
                sentences_parsed: c.sentences.len(),
                sentences_unparsed: c.rejected.len(),
                ..IngestReport::default()
            };
            Ok((c.sentences, json!({ "report": report, "rejected": rejected })))
        }
    }
}

fn write_network(w: &mut Writer, net: &MultiplexNetwork, base: &str) -> Result<(String, String), CliError> {
    let json_name = format!("{base}.network.json");
    let graphml_name = format!("{base}.graphml");
    w.raw(&json_name, &net.to_json()?)?;
    w.raw(&graphml_name, &write_graphml(net)?)?;
    Ok((json_name, graphml_name))
}

pub fn build(s: &Settings) -> Result<Outcome, CliError> {
    let corpus = required(&s.corpus, "corpus")?;
    let lists = word_lists(s)?;
    let lexicons = load_lexicons(s)?;
    let corpus_id = corpus.file_stem().map(|x| x.to_string_lossy().into_owned()).unwrap_or_default();
    let (sentences, ingest) = read_sentences(s, corpus, &lists)?;
    let mut w = writer(s)?;

    let groups: Vec<(String, Vec<ParsedSentence>)> = if s.per_document {
        let mut by_doc: Vec<(String, Vec<ParsedSentence>)> = Vec::new();
        for sent in sentences {
            match by_doc.last_mut() {
                Some((id, v)) if *id == sent.doc_id => v.push(sent),
                _ => by_doc.push((sent.doc_id.clone(), vec![sent])),
            }
        }
        by_doc
    } else {
        vec![(corpus_id.clone(), sentences)]
    };
    if groups.is_empty() {
        return Err(tfmn::Error::NoSentences.into());
    }

    let mut entries = Vec::new();
    for (id, sents) in &groups {
        let opts = BuildOptions {
            corpus_id: id.clone(),
            config_hash: s.config_hash.clone(),
            seed: s.seed,
        };
        let (net, summary) = build_network(sents, &lexicons, &lists, &opts)?;
        let (network, graphml) = write_network(&mut w, &net, &file_safe(id))?;
        entries.push(NetworkEntry {
            corpus_id: id.clone(),
            network,
            graphml,
            summary,
        });
    }
    let sizes: Vec<f64> = entries.iter().map(|e| e.summary.nodes as f64).collect();
    w.json(
        &format!("{}.summary.json", file_safe(&corpus_id)),
        &json!({
            "corpus_id": corpus_id,
            "per_document": s.per_document,
            "ingest": ingest,
            "median_nodes": tfmn::stats::median(&sizes),
            "networks": entries,
        }),
    )?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- rank ----

pub fn rank(s: &Settings, network: &Path) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let ranked = rank_concepts(&net, s.layer_mode, s.top_k)?;
    let g = Graph::from_network(&net, s.layer_mode);
    let mut csv = Vec::new();
    write_centrality_csv(&centrality_report(&g), &mut csv)?;
    let mut w = writer(s)?;
    w.csv("centrality.csv", &String::from_utf8_lossy(&csv))?;
    w.json(
        "rank.json",
        &json!({
            "network": network_stamp(&net, network)?,
            "layer_mode": s.layer_mode,
            "top_k": s.top_k,
            "ranking": ranked,
        }),
    )?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- aura ----

pub fn aura(s: &Settings, network: &Path, targets: &[String]) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let t = resolve_targets(&net, targets)?;
    let mut reports = Vec::new();
    for (word, stem) in &t.found {
        let r = valence_aura(&net, stem)?;
        reports.push(json!({ "requested": word, "report": r }));
    }
    let mut w = writer(s)?;
    w.json(
        "aura.json",
        &json!({
            "network": network_stamp(&net, network)?,
            "auras": reports,
            "unknown_targets": t.unknown,
        }),
    )?;
    all_unknown(&t)?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- profile ----

pub fn profile(s: &Settings, network: &Path, targets: &[String]) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let lex = load_lexicons(s)?;
    let emotions = match lex.emotions {
        Some(e) => e,
        None => {
            log::warn!("no emotion lexicon; antonyms are scored from network labels only");
            let entries: Vec<_> = net.nodes.iter().map(|(k, c)| (k.as_str(), c.emotions)).collect();
            if entries.is_empty() {
                EmotionLexicon::default()
            } else {
                EmotionLexicon::from_entries(entries)?
            }
        }
    };
    let antonyms = lex.antonyms.unwrap_or_else(|| {
        log::warn!("no antonym lexicon; negated associates are not expanded");
        AntonymLexicon::default()
    });
    let t = resolve_targets(&net, targets)?;
    let mut w = writer(s)?;
    let mut profiles = Vec::new();
    for (word, stem) in &t.found {
        let p = emotional_profile(&net, stem, &emotions, &antonyms)?;
        w.json(
            &format!("chart_{}.json", file_safe(stem)),
            &json!({ "target": stem, "chart": p.chart_data(), "total": p.total() }),
        )?;
        profiles.push(json!({ "requested": word, "profile": p }));
    }
    w.json(
        "profile.json",
        &json!({
            "network": network_stamp(&net, network)?,
            "profiles": profiles,
            "unknown_targets": t.unknown,
        }),
    )?;
    all_unknown(&t)?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- communities ----

pub fn communities(s: &Settings, network: &Path, targets: &[String], kind: SubgraphKind) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let g = Graph::from_network(&net, s.layer_mode);
    let partition = louvain(&g, derive_seed(s.seed, "communities"))?;
    let mut groups: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (stem, c) in &partition.communities {
        groups.entry(*c).or_default().push(stem);
    }
    let listed: Vec<_> = groups
        .iter()
        .map(|(id, members)| json!({ "id": id, "size": members.len(), "members": members }))
        .collect();
    let mut w = writer(s)?;
    let t = if targets.is_empty() {
        None
    } else {
        Some(resolve_targets(&net, targets)?)
    };
    let mut neighborhoods = Vec::new();
    if let Some(t) = &t {
        for (word, stem) in &t.found {
            let mode = match kind {
                SubgraphKind::Neighbors => SubgraphMode::Neighbors,
                SubgraphKind::Community => SubgraphMode::Community(&partition),
            };
            let sub = neighborhood_subgraph(&net, stem, mode)?;
            let nodes: Vec<_> = sub
                .network
                .nodes
                .values()
                .map(|c| json!({ "stem": c.stem, "valence_label": c.valence_label, "community": partition.communities.get(&c.stem) }))
                .collect();
            let name = w.json(
                &format!("neighborhood_{}.json", file_safe(stem)),
                &json!({
                    "target": stem,
                    "requested": word,
                    "mode": kind_name(kind),
                    "nodes": nodes,
                    "edges": sub.edges,
                }),
            )?;
            neighborhoods.push(name.file_name().map(|n| n.to_string_lossy().into_owned()));
        }
    }
    w.json(
        "communities.json",
        &json!({
            "network": network_stamp(&net, network)?,
            "layer_mode": s.layer_mode,
            "louvain_seed": partition.seed,
            "modularity": partition.modularity,
            "community_count": partition.community_count(),
            "communities": listed,
            "edge_classes": class_counts(&net),
            "neighborhoods": neighborhoods,
            "unknown_targets": t.as_ref().map(|t| t.unknown.clone()).unwrap_or_default(),
        }),
    )?;
    if let Some(t) = &t {
        all_unknown(t)?;
    }
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

fn kind_name(k: SubgraphKind) -> &'static str {
    match k {
        SubgraphKind::Neighbors => "neighbors",
        SubgraphKind::Community => "community",
    }
}

fn class_counts(net: &MultiplexNetwork) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for e in classify_edges(net) {
        *out.entry(e.class.as_str()).or_default() += 1;
    }
    out
}

// ---- nulltest ----

pub fn nulltest(s: &Settings, network: &Path) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let r = clustering_null(
        &net,
        s.layer_mode,
        s.realizations,
        derive_seed(s.seed, "nulltest"),
        s.swaps_per_edge,
    )?;
    let line = format!(
        "{:.3} ({:.3} \u{b1} {:.3} for reference configuration models)",
        r.empirical, r.ensemble_mean, r.ensemble_std
    );
    let mut w = writer(s)?;
    w.json(
        "nulltest.json",
        &json!({ "network": network_stamp(&net, network)?, "clustering": r, "summary": line }),
    )?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- benchmark ----

fn read_topics(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, topic) = line.split_once('\t').ok_or_else(|| CliError::Config {
            message: format!("{}:{}: expected label<TAB>topic", path.display(), i + 1),
        })?;
        out.insert(label.trim().to_string(), topic.trim().to_string());
    }
    Ok(out)
}

#[derive(Serialize)]
struct ParagraphResult {
    label: String,
    topic: Option<String>,
    nodes: usize,
    largest_component: usize,
    unparsed_sentences: usize,
    ranking: Vec<tfmn::metrics::RankedConcept>,
}

pub fn benchmark(s: &Settings, per_topic: bool) -> Result<Outcome, CliError> {
    let corpus = required(&s.corpus, "corpus")?;
    let topics = read_topics(required(&s.topics, "topics")?)?;
    let oracle_path = required(&s.oracle, "oracle")?;
    let oracle = load_free_associations(open(oracle_path)?, &source_name(oracle_path))?;
    let lists = word_lists(s)?;
    let lexicons = load_lexicons(s)?;
    let docs: Vec<RawDocument> = read_corpus(open(corpus)?, &source_name(corpus))?;

    let mut paragraphs = Vec::new();
    let mut rankings = Vec::new();
    for doc in docs {
        let label = doc.id.clone();
        let parsed = parse_documents(vec![doc], s.min_words, &lists);
        let opts = BuildOptions {
            corpus_id: label.clone(),
            config_hash: s.config_hash.clone(),
            seed: s.seed,
        };
        let (net, _) = build_network(&parsed.sentences, &lexicons, &lists, &opts)?;
        let g = Graph::from_network(&net, s.layer_mode);
        let ranking = rank_concepts(&net, s.layer_mode, s.top_k)?;
        let topic = topics.get(&label).cloned();
        if let Some(t) = &topic {
            rankings.push(TopicRanking {
                label: label.clone(),
                topic: t.clone(),
                stems: ranking.iter().map(|r| r.stem.clone()).collect(),
            });
        } else {
            log::warn!("paragraph {label:?} has no topic entry; ranked but not tested");
        }
        paragraphs.push(ParagraphResult {
            label,
            topic,
            nodes: g.node_count(),
            largest_component: g.largest_component().len(),
            unparsed_sentences: parsed.unparsed.len(),
            ranking,
        });
    }
    let opts = BenchmarkOptions {
        n_realizations: s.realizations,
        swaps_per_edge: s.swaps_per_edge,
        seed: derive_seed(s.seed, "benchmark"),
        per_topic_tests: per_topic,
    };
    let report = benchmark_topic_relevance(&rankings, &oracle, &opts)?;

    let mut csv = String::from("paragraph,rank,stem,closeness\n");
    for p in &paragraphs {
        for (i, r) in p.ranking.iter().enumerate() {
            csv.push_str(&format!("{},{},{},{}\n", p.label, i + 1, r.stem, r.closeness));
        }
    }
    let sizes: Vec<f64> = paragraphs.iter().map(|p| p.nodes as f64).collect();
    let mut w = writer(s)?;
    w.csv("benchmark_rankings.csv", &csv)?;
    w.json(
        "benchmark.json",
        &json!({
            "paragraphs": paragraphs,
            "median_nodes": tfmn::stats::median(&sizes),
            "relevance": report,
        }),
    )?;
    Ok(Outcome {
        written: w.written().to_vec(),
    })
}

// ---- export ----

pub fn export(s: &Settings, network: &Path, format: ExportFormat, output: Option<&Path>) -> Result<Outcome, CliError> {
    let net = load_network(network)?;
    let base = network
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let base = base.trim_end_matches(".json").trim_end_matches(".network").trim_end_matches(".graphml").to_string();
    let (ext, body) = match format {
        ExportFormat::Json => ("network.json", net.to_json()?),
        ExportFormat::Graphml => ("graphml", write_graphml(&net)?),
        ExportFormat::Csv => {
            let mut body = String::from("source,target,layer,count,edge_class\n");
            for e in classify_edges(&net) {
                let (layer, count) = match net.syntactic.get(&(e.source.clone(), e.target.clone())) {
                    Some(c) if e.class != tfmn::analysis::EdgeClass::Synonym => ("syntactic", c.to_string()),
                    _ => ("synonym", String::new()),
                };
                body.push_str(&format!("{},{},{layer},{count},{}\n", e.source, e.target, e.class.as_str()));
            }
            ("edges.csv", body)
        }
    };
    let mut w = writer(s)?;
    let name = format!("{}.{ext}", file_safe(&base));
    match output {
        Some(p) => {
            fs::write(p, if format == ExportFormat::Csv { format!("# config_hash={} seed={}\n{body}", s.config_hash, s.seed) } else { body })
                .map_err(|e| CliError::io(p, e))?;
            Ok(Outcome {
                written: vec![p.to_path_buf()],
            })
        }
        None => {
            if format == ExportFormat::Csv {
                w.csv(&name, &body)?;
            } else {
                w.raw(&name, &body)?;
            }
            Ok(Outcome {
                written: w.written().to_vec(),
            })
        }
    }
}
