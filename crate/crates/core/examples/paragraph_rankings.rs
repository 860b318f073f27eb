//! Builds one network per benchmark paragraph and prints size, largest
//! component share and the top-10 concepts by closeness.

use std::fs::File;
use std::io::BufReader;

use tfmn::ingest::{parse_documents, read_corpus, WordLists};
use tfmn::metrics::{rank_concepts, Graph};
use tfmn::network::{build_network, BuildOptions};
use tfmn::stats::{benchmark_topic_relevance, load_free_associations, BenchmarkOptions, TopicRanking};
use tfmn::{LayerMode, Lexicons};

fn main() -> tfmn::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/benchmark/complexity_explained.tsv");
    let docs = read_corpus(BufReader::new(File::open(path)?), path)?;
    let lists = WordLists::bundled();
    let topics: Vec<(String, String)> = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/benchmark/topics.tsv"))?
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let mut rankings = Vec::new();
    for doc in docs {
        let id = doc.id.clone();
        let corpus = parse_documents(vec![doc], 1, lists);
        let opts = BuildOptions {
            corpus_id: id.clone(),
            config_hash: String::new(),
            seed: 0,
        };
        let (net, _) = build_network(&corpus.sentences, &Lexicons::default(), lists, &opts)?;
        let g = Graph::from_network(&net, LayerMode::Aggregate);
        let lcc = g.largest_component().len();
        let top: Vec<String> = rank_concepts(&net, LayerMode::Aggregate, 10)?
            .into_iter()
            .map(|r| r.stem)
            .collect();
        println!(
            "{id}\tnodes={}\tlcc={lcc}\tunparsed={}\t{}",
            g.node_count(),
            corpus.unparsed.len(),
            top.join(" ")
        );
        if let Some((_, topic)) = topics.iter().find(|(l, _)| *l == id) {
            rankings.push(TopicRanking {
                label: id,
                topic: topic.clone(),
                stems: top,
            });
        }
    }
    let oracle_path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/benchmark/free_associations.tsv");
    let oracle = load_free_associations(BufReader::new(File::open(oracle_path)?), oracle_path)?;
    let report = benchmark_topic_relevance(&rankings, &oracle, &BenchmarkOptions::default())?;
    println!(
        "benchmark: empirical median {} null median {} U {} p {:.4} skipped {:?}",
        report.empirical_median, report.null_median, report.test.u, report.test.p_value, report.skipped_topics
    );
    for t in &report.topics {
        println!("  {} {:?} absent {:?} null median {:?}", t.topic_stem, t.measured.iter().zip(&t.empirical).collect::<Vec<_>>(), t.absent_from_oracle, t.null_median);
    }
    Ok(())
}
