//! Null models, rank tests and the free-association benchmark.

mod benchmark;
mod mwu;
mod rewire;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{mean_clustering, Graph, LayerMode};
use crate::network::MultiplexNetwork;
use crate::seed::derive_seed;

pub use benchmark::{
    benchmark_topic_relevance, load_free_associations, BenchmarkOptions, BenchmarkReport, FreeAssociationNetwork,
    TopicRanking, TopicResult,
};
pub use mwu::{mann_whitney_u, median, MannWhitneyResult};
pub use rewire::{configuration_rewire, double_edge_swap, rewire_graph, RewireReport, SwapStats};

/// Rewired copies of one network.
#[derive(Debug, Clone)]
pub struct NullEnsemble {
    pub realizations: Vec<MultiplexNetwork>,
    pub reports: Vec<RewireReport>,
}

/// `n` configuration-model realizations, seeded from `seed`.
pub fn null_ensemble(net: &MultiplexNetwork, n: usize, seed: u64, swaps_per_edge: usize) -> Result<NullEnsemble> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 null realizations, got {n}")));
    }
    let (realizations, reports) = (0..n)
        .into_par_iter()
        .map(|i| configuration_rewire(net, derive_seed(seed, &format!("null/realization/{i}")), swaps_per_edge))
        .unzip();
    Ok(NullEnsemble { realizations, reports })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusteringNull {
    pub empirical: f64,
    pub ensemble_mean: f64,
    /// Sample standard deviation over realizations.
    pub ensemble_std: f64,
    /// (empirical - mean) / std; absent when std is 0.
    pub z_score: Option<f64>,
    pub n_realizations: usize,
    pub swaps_per_edge: usize,
    pub seed: u64,
    pub layer_mode: LayerMode,
}

/// Mean clustering of the network against its configuration ensemble.
pub fn clustering_null(
    net: &MultiplexNetwork,
    mode: LayerMode,
    n_realizations: usize,
    seed: u64,
    swaps_per_edge: usize,
) -> Result<ClusteringNull> {
    let ensemble = null_ensemble(net, n_realizations, seed, swaps_per_edge)?;
    let empirical = mean_clustering(&Graph::from_network(net, mode));
    let values: Vec<f64> = ensemble
        .realizations
        .par_iter()
        .map(|r| mean_clustering(&Graph::from_network(r, mode)))
        .collect();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let std = var.sqrt();
    Ok(ClusteringNull {
        empirical,
        ensemble_mean: mean,
        ensemble_std: std,
        z_score: (std > 0.0).then(|| (empirical - mean) / std),
        n_realizations,
        swaps_per_edge,
        seed,
        layer_mode: mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{canonical_pair, Concept};

    #[test]
    fn ensemble_needs_two_realizations() {
        let net = MultiplexNetwork::default();
        assert!(matches!(null_ensemble(&net, 1, 0, 10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn triangles_beat_their_null() {
        // two triangles sharing nothing, joined through a path, plus a tail
        let mut net = MultiplexNetwork::default();
        let edges = [
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("d", "e"),
            ("e", "f"),
            ("d", "f"),
            ("c", "d"),
            ("f", "g"),
            ("g", "h"),
        ];
        for (x, y) in edges {
            for s in [x, y] {
                net.nodes.entry(s.into()).or_insert_with(|| Concept::unlabeled(s));
            }
            net.syntactic.insert(canonical_pair(x, y), 1);
        }
        let r = clustering_null(&net, LayerMode::Aggregate, 30, 7, 10).unwrap();
        assert!(r.empirical > r.ensemble_mean, "{r:?}");
        assert_eq!(r, clustering_null(&net, LayerMode::Aggregate, 30, 7, 10).unwrap());
    }
}
