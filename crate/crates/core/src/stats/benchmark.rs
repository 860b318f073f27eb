use std::collections::BTreeSet;
use std::io::BufRead;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, RowProblem};
use crate::metrics::Graph;
use crate::network::normalize_word;
use crate::seed::derive_seed;
use crate::stats::mwu::{mann_whitney_u, median, MannWhitneyResult};
use crate::stats::rewire::rewire_graph;

/// Behavioural association graph: words linked when one cued the other.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeAssociationNetwork {
    pub graph: Graph,
    /// Stems that appeared in the cue column.
    pub cues: BTreeSet<String>,
}

/// Reads `cue<TAB>response` rows, normalizing both words like concept
/// keys. Blank lines and `#` comments are skipped; self-pairs are dropped.
pub fn load_free_associations<R: BufRead>(reader: R, source_name: &str) -> Result<FreeAssociationNetwork> {
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut cues = BTreeSet::new();
    let mut problems = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 2 {
            problems.push(RowProblem {
                line: i + 1,
                message: format!("expected 2 tab-separated fields, found {}", fields.len()),
            });
            continue;
        }
        match (normalize_word(fields[0]), normalize_word(fields[1])) {
            (Some(a), Some(b)) => {
                cues.insert(a.clone());
                if a != b {
                    edges.push((a, b));
                }
            }
            _ => problems.push(RowProblem {
                line: i + 1,
                message: "word without letters".to_string(),
            }),
        }
    }
    if !problems.is_empty() {
        return Err(Error::Load {
            source_name: source_name.to_string(),
            problems,
        });
    }
    if edges.is_empty() {
        return Err(Error::NoEntries(source_name.to_string()));
    }
    let graph = Graph::from_named_edges([], edges.iter().map(|(a, b)| (a.as_str(), b.as_str())));
    Ok(FreeAssociationNetwork { graph, cues })
}

/// Top-ranked stems of one text, tagged with the topic word it is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopicRanking {
    pub label: String,
    pub topic: String,
    pub stems: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchmarkOptions {
    pub n_realizations: usize,
    pub swaps_per_edge: usize,
    pub seed: u64,
    pub per_topic_tests: bool,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        BenchmarkOptions {
            n_realizations: 50,
            swaps_per_edge: 10,
            seed: 0,
            per_topic_tests: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopicResult {
    pub label: String,
    pub topic_stem: String,
    pub measured: Vec<String>,
    pub empirical: Vec<u32>,
    pub absent_from_oracle: Vec<String>,
    /// Ranked stems equal to the topic stem itself (distance 0, excluded).
    pub topic_itself: usize,
    pub unreachable: usize,
    pub null_unreachable: usize,
    pub empirical_median: Option<f64>,
    pub null_median: Option<f64>,
    pub test: Option<MannWhitneyResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    /// Which graph the null model reshuffles.
    pub randomized_network: String,
    pub seed: u64,
    pub n_realizations: usize,
    pub swaps_per_edge: usize,
    pub realization_seeds: Vec<u64>,
    pub skipped_topics: Vec<String>,
    pub topics: Vec<TopicResult>,
    pub empirical_median: f64,
    pub null_median: f64,
    pub test: MannWhitneyResult,
}

fn distances(graph: &Graph, topic: usize, targets: &[usize]) -> (Vec<u32>, usize) {
    let row = graph.bfs(topic);
    let mut out = Vec::new();
    let mut unreachable = 0;
    for &t in targets {
        match row[t] {
            Some(d) => out.push(d),
            None => unreachable += 1,
        }
    }
    (out, unreachable)
}

/// Oracle distances from ranked stems to their topic, against the same
/// distances on degree-preserving rewires of the oracle.
pub fn benchmark_topic_relevance(
    rankings: &[TopicRanking],
    oracle: &FreeAssociationNetwork,
    options: &BenchmarkOptions,
) -> Result<BenchmarkReport> {
    if options.n_realizations < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 null realizations, got {}",
            options.n_realizations
        )));
    }
    let g = &oracle.graph;
    struct Plan {
        topic_idx: usize,
        targets: Vec<usize>,
        result: TopicResult,
    }
    let mut plans = Vec::new();
    let mut skipped_topics = Vec::new();
    for r in rankings {
        let topic_stem = normalize_word(&r.topic).unwrap_or_default();
        let Some(topic_idx) = g.index_of(&topic_stem) else {
            log::warn!("topic {:?} ({topic_stem:?}) absent from the oracle; skipped", r.topic);
            skipped_topics.push(r.label.clone());
            continue;
        };
        let mut result = TopicResult {
            label: r.label.clone(),
            topic_stem: topic_stem.clone(),
            measured: Vec::new(),
            empirical: Vec::new(),
            absent_from_oracle: Vec::new(),
            topic_itself: 0,
            unreachable: 0,
            null_unreachable: 0,
            empirical_median: None,
            null_median: None,
            test: None,
        };
        let mut targets = Vec::new();
        for s in &r.stems {
            if *s == topic_stem {
                result.topic_itself += 1;
            } else if let Some(i) = g.index_of(s) {
                targets.push(i);
                result.measured.push(s.clone());
            } else {
                result.absent_from_oracle.push(s.clone());
            }
        }
        plans.push(Plan {
            topic_idx,
            targets,
            result,
        });
    }
    if plans.is_empty() {
        return Err(Error::Benchmark("no topic is present in the oracle".to_string()));
    }

    let realization_seeds: Vec<u64> = (0..options.n_realizations)
        .map(|i| derive_seed(options.seed, &format!("benchmark/realization/{i}")))
        .collect();
    // per realization, per topic: (distances, unreachable)
    let null_runs: Vec<Vec<(Vec<u32>, usize)>> = realization_seeds
        .par_iter()
        .map(|&s| {
            let (rg, _) = rewire_graph(g, options.swaps_per_edge, s);
            plans.iter().map(|p| distances(&rg, p.topic_idx, &p.targets)).collect()
        })
        .collect();

    let mut pooled_emp: Vec<f64> = Vec::new();
    let mut pooled_null: Vec<f64> = Vec::new();
    let mut topics = Vec::new();
    for (k, mut plan) in plans.into_iter().enumerate() {
        let (emp, unreachable) = distances(g, plan.topic_idx, &plan.targets);
        let mut null: Vec<f64> = Vec::new();
        for run in &null_runs {
            null.extend(run[k].0.iter().map(|&d| f64::from(d)));
            plan.result.null_unreachable += run[k].1;
        }
        let emp_f: Vec<f64> = emp.iter().map(|&d| f64::from(d)).collect();
        plan.result.unreachable = unreachable;
        plan.result.empirical = emp;
        plan.result.empirical_median = median(&emp_f);
        plan.result.null_median = median(&null);
        if options.per_topic_tests && !emp_f.is_empty() && !null.is_empty() {
            plan.result.test = Some(mann_whitney_u(&emp_f, &null)?);
        }
        pooled_emp.extend(emp_f);
        pooled_null.extend(null);
        topics.push(plan.result);
    }
    if pooled_emp.is_empty() {
        return Err(Error::Benchmark("no ranked stem is reachable from its topic in the oracle".to_string()));
    }
    if pooled_null.is_empty() {
        return Err(Error::Benchmark("null realizations produced no distances".to_string()));
    }
    pooled_emp.sort_by(f64::total_cmp);
    pooled_null.sort_by(f64::total_cmp);
    let test = mann_whitney_u(&pooled_emp, &pooled_null)?;
    Ok(BenchmarkReport {
        randomized_network: "free-association oracle".to_string(),
        seed: options.seed,
        n_realizations: options.n_realizations,
        swaps_per_edge: options.swaps_per_edge,
        realization_seeds,
        skipped_topics,
        topics,
        empirical_median: test.median1,
        null_median: test.median2,
        test,
    })
}
