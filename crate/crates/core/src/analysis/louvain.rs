use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::Graph;
use crate::seed::rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommunityPartition {
    /// stem -> community id; ids numbered by each community's first stem.
    pub communities: BTreeMap<String, usize>,
    pub modularity: f64,
    pub seed: u64,
}

impl CommunityPartition {
    pub fn community_count(&self) -> usize {
        self.communities.values().copied().max().map_or(0, |m| m + 1)
    }

    pub fn members(&self, id: usize) -> Vec<&str> {
        self.communities
            .iter()
            .filter(|(_, c)| **c == id)
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

/// Newman modularity of `labels` (one community label per node) at
/// resolution 1. Zero for a graph without edges.
pub fn modularity(graph: &Graph, labels: &[usize]) -> f64 {
    let m = graph.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let mut internal: BTreeMap<usize, f64> = BTreeMap::new();
    let mut degree: BTreeMap<usize, f64> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate().take(graph.node_count()) {
        *degree.entry(l).or_default() += graph.degree(i) as f64;
    }
    for (a, b) in graph.edges() {
        if labels[a] == labels[b] {
            *internal.entry(labels[a]).or_default() += 1.0;
        }
    }
    degree
        .iter()
        .map(|(c, d)| internal.get(c).copied().unwrap_or(0.0) / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted graph used at each aggregation level. `adj` excludes
/// self-loops; `self_w[i]` holds A_ii (internal weight counted both ways).
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_w: Vec<f64>,
}

impl Level {
    fn strength(&self, i: usize) -> f64 {
        self.self_w[i] + self.adj[i].iter().map(|(_, w)| w).sum::<f64>()
    }
}

const MIN_GAIN: f64 = 1e-12;

/// One local-moving phase; returns the community of each level node and
/// whether anything moved.
fn local_moving(level: &Level, two_m: f64, order: &[usize]) -> (Vec<usize>, bool) {
    let n = level.adj.len();
    let k: Vec<f64> = (0..n).map(|i| level.strength(i)).collect();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = k.clone();
    let mut moved_any = false;
    for _pass in 0..1000 {
        let mut moved = false;
        for &i in order {
            let own = comm[i];
            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &(j, w) in &level.adj[i] {
                *links.entry(comm[j]).or_default() += w;
            }
            tot[own] -= k[i];
            let score = |c: usize, links: &BTreeMap<usize, f64>| {
                links.get(&c).copied().unwrap_or(0.0) - tot[c] * k[i] / two_m
            };
            let mut best = own;
            let mut best_score = score(own, &links);
            for &c in links.keys() {
                let s = score(c, &links);
                if s > best_score + MIN_GAIN {
                    best = c;
                    best_score = s;
                }
            }
            tot[best] += k[i];
            if best != own {
                comm[i] = best;
                moved = true;
                moved_any = true;
            }
        }
        if !moved {
            break;
        }
    }
    (comm, moved_any)
}

/// Louvain modularity optimisation at resolution 1. The node visiting
/// order at every level is shuffled from `seed`, so equal seeds give equal
/// partitions.
pub fn louvain(graph: &Graph, seed: u64) -> Result<CommunityPartition> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = rng(seed);
    let two_m = 2.0 * graph.edge_count() as f64;
    // membership of original nodes in current level nodes
    let mut member: Vec<usize> = (0..n).collect();
    if two_m > 0.0 {
        let mut level = Level {
            adj: (0..n)
                .map(|i| graph.neighbors(i).iter().map(|&j| (j, 1.0)).collect())
                .collect(),
            self_w: vec![0.0; n],
        };
        loop {
            let size = level.adj.len();
            let mut order: Vec<usize> = (0..size).collect();
            order.shuffle(&mut rng);
            let (comm, moved) = local_moving(&level, two_m, &order);
            if !moved {
                break;
            }
            // renumber communities densely in order of first appearance
            let mut renumber: HashMap<usize, usize> = HashMap::new();
            for &c in &comm {
                let next = renumber.len();
                renumber.entry(c).or_insert(next);
            }
            let dense: Vec<usize> = comm.iter().map(|c| renumber[c]).collect();
            for m in member.iter_mut() {
                *m = dense[*m];
            }
            let count = renumber.len();
            let mut self_w = vec![0.0; count];
            let mut merged: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
            for i in 0..size {
                let ci = dense[i];
                self_w[ci] += level.self_w[i];
                for &(j, w) in &level.adj[i] {
                    let cj = dense[j];
                    if ci == cj {
                        self_w[ci] += w;
                    } else {
                        *merged[ci].entry(cj).or_default() += w;
                    }
                }
            }
            level = Level {
                adj: merged.into_iter().map(|m| m.into_iter().collect()).collect(),
                self_w,
            };
            if count == size {
                break;
            }
        }
    }

    // relabel by first node index (names are sorted, so by first stem)
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    let labels: Vec<usize> = member
        .iter()
        .map(|m| {
            let next = relabel.len();
            *relabel.entry(*m).or_insert(next)
        })
        .collect();
    Ok(CommunityPartition {
        communities: (0..n).map(|i| (graph.name(i).to_string(), labels[i])).collect(),
        modularity: modularity(graph, &labels),
        seed,
    })
}

/// Partition labels in graph index order.
pub fn partition_labels(graph: &Graph, partition: &CommunityPartition) -> Result<Vec<usize>> {
    graph
        .names()
        .iter()
        .map(|s| {
            partition
                .communities
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("node {s:?} missing from partition")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique_edges(nodes: &[&'static str]) -> Vec<(&'static str, &'static str)> {
        let mut out = Vec::new();
        for (i, a) in nodes.iter().enumerate() {
            for b in &nodes[i + 1..] {
                out.push((*a, *b));
            }
        }
        out
    }

    #[test]
    fn complete_graph_is_one_community() {
        let g = Graph::from_named_edges([], clique_edges(&["a", "b", "c", "d"]));
        let p = louvain(&g, 1).unwrap();
        assert_eq!(p.community_count(), 1);
        assert!(p.modularity.abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_consistent() {
        let mut edges = clique_edges(&["a", "b", "c", "d"]);
        edges.extend(clique_edges(&["e", "f", "g", "h"]));
        edges.push(("d", "e"));
        let g = Graph::from_named_edges([], edges);
        let p = louvain(&g, 42).unwrap();
        assert_eq!(p, louvain(&g, 42).unwrap());
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.members(0), ["a", "b", "c", "d"]);
        let labels = partition_labels(&g, &p).unwrap();
        assert!((modularity(&g, &labels) - p.modularity).abs() < 1e-12);
    }

    #[test]
    fn edgeless_and_empty() {
        let g = Graph::from_named_edges(["a", "b"], []);
        let p = louvain(&g, 0).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_eq!(p.modularity, 0.0);
        assert!(matches!(louvain(&Graph::default(), 0), Err(Error::EmptyGraph)));
    }
}
