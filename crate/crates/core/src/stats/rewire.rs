use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use serde::Serialize;

use crate::metrics::Graph;
use crate::network::{MultiplexNetwork, StemPair};
use crate::seed::{derive_seed, rng};

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SwapStats {
    pub requested: usize,
    pub performed: usize,
    pub attempts: usize,
}

/// Degree-preserving double-edge swaps on a simple graph: (a,b),(c,d)
/// become (a,d),(c,b). Swaps creating a self-loop or an existing edge are
/// rejected and retried, up to 100 attempts per requested swap.
pub fn double_edge_swap<R: Rng>(edges: &mut [(usize, usize)], n_swaps: usize, rng: &mut R) -> SwapStats {
    let mut stats = SwapStats {
        requested: n_swaps,
        ..Default::default()
    };
    if edges.len() < 2 || n_swaps == 0 {
        return stats;
    }
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|&(a, b)| key(a, b)).collect();
    let max_attempts = n_swaps.saturating_mul(100);
    while stats.performed < n_swaps && stats.attempts < max_attempts {
        stats.attempts += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b {
            continue;
        }
        let (e1, e2) = (key(a, d), key(c, b));
        if e1 == e2 || present.contains(&e1) || present.contains(&e2) {
            continue;
        }
        present.remove(&key(a, b));
        present.remove(&key(c, d));
        present.insert(e1);
        present.insert(e2);
        edges[i] = e1;
        edges[j] = e2;
        stats.performed += 1;
    }
    stats
}

/// One rewired copy of a simple graph with `swaps_per_edge * m` swaps.
pub fn rewire_graph(graph: &Graph, swaps_per_edge: usize, seed: u64) -> (Graph, SwapStats) {
    let mut edges = graph.edges();
    let mut r = rng(seed);
    let swaps = swaps_per_edge * edges.len();
    let stats = double_edge_swap(&mut edges, swaps, &mut r);
    (Graph::from_edges(graph.names().to_vec(), edges), stats)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RewireReport {
    pub seed: u64,
    pub syntactic: SwapStats,
    pub synonym: SwapStats,
    /// Layers with fewer than two edges, returned unchanged.
    pub unchanged_layers: Vec<String>,
}

fn rewire_layer<'a>(
    net: &MultiplexNetwork,
    pairs: impl Iterator<Item = &'a StemPair>,
    swaps_per_edge: usize,
    seed: u64,
) -> (Vec<StemPair>, SwapStats, bool) {
    let names: Vec<&String> = net.nodes.keys().collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut edges: Vec<(usize, usize)> = pairs.map(|(a, b)| key(index[a.as_str()], index[b.as_str()])).collect();
    let too_small = edges.len() < 2;
    let swaps = swaps_per_edge * edges.len();
    let stats = double_edge_swap(&mut edges, swaps, &mut rng(seed));
    let out = edges
        .into_iter()
        .map(|(a, b)| (names[a].clone(), names[b].clone()))
        .collect();
    (out, stats, too_small)
}

/// Configuration-model realization: each layer rewired independently,
/// preserving every node's per-layer degree. Rewired syntactic links carry
/// count 1.
pub fn configuration_rewire(net: &MultiplexNetwork, seed: u64, swaps_per_edge: usize) -> (MultiplexNetwork, RewireReport) {
    let mut report = RewireReport {
        seed,
        ..Default::default()
    };
    let (syn, syn_stats, syn_small) =
        rewire_layer(net, net.syntactic.keys(), swaps_per_edge, derive_seed(seed, "layer/syntactic"));
    let (sym, sym_stats, sym_small) =
        rewire_layer(net, net.synonym.iter(), swaps_per_edge, derive_seed(seed, "layer/synonym"));
    report.syntactic = syn_stats;
    report.synonym = sym_stats;
    for (small, name) in [(syn_small, "syntactic"), (sym_small, "synonym")] {
        if small {
            log::warn!("{name} layer has fewer than two edges; left unchanged");
            report.unchanged_layers.push(name.to_string());
        }
    }
    let rewired = MultiplexNetwork {
        nodes: net.nodes.clone(),
        syntactic: syn.into_iter().map(|e| (e, 1)).collect(),
        synonym: sym.into_iter().collect(),
        provenance: net.provenance.clone(),
    };
    (rewired, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{canonical_pair, Concept};

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.node_count()).map(|i| g.degree(i)).collect()
    }

    #[test]
    fn swaps_preserve_degrees_and_simplicity() {
        let g = Graph::from_named_edges(
            [],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("a", "c"), ("b", "d"), ("f", "a")],
        );
        for seed in 0..20 {
            let (r, stats) = rewire_graph(&g, 10, seed);
            assert_eq!(degrees(&r), degrees(&g));
            assert_eq!(r.edge_count(), g.edge_count());
            assert!(stats.performed > 0);
        }
        assert_eq!(rewire_graph(&g, 10, 3).0, rewire_graph(&g, 10, 3).0);
    }

    #[test]
    fn four_cycle_stays_a_four_cycle() {
        let g = Graph::from_named_edges([], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        for seed in 0..50 {
            let (r, _) = rewire_graph(&g, 10, seed);
            assert!(degrees(&r).iter().all(|&d| d == 2));
            assert_eq!(r.edge_count(), 4);
        }
    }

    #[test]
    fn small_layer_left_unchanged() {
        let mut net = MultiplexNetwork::default();
        for s in ["a", "b", "c", "d"] {
            net.nodes.insert(s.into(), Concept::unlabeled(s));
        }
        net.syntactic.insert(canonical_pair("a", "b"), 3);
        net.syntactic.insert(canonical_pair("c", "d"), 1);
        net.synonym.insert(canonical_pair("a", "c"));
        let (r, report) = configuration_rewire(&net, 9, 10);
        assert_eq!(report.unchanged_layers, ["synonym"]);
        assert_eq!(r.synonym, net.synonym);
        assert_eq!(r.syntactic.len(), 2);
        r.validate().unwrap();
    }
}
