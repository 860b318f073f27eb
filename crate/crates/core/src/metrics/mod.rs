//! Distances, closeness, degree, clustering and concept rankings.

mod graph;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

pub use graph::{Graph, LayerMode};

/// All-pairs hop distances, absent across components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub names: Vec<String>,
    pub component: Vec<usize>,
    pub dist: Vec<Vec<Option<u32>>>,
}

impl DistanceMatrix {
    pub fn of(graph: &Graph) -> Self {
        let dist = (0..graph.node_count()).into_par_iter().map(|s| graph.bfs(s)).collect();
        DistanceMatrix {
            names: graph.names().to_vec(),
            component: graph.components().0,
            dist,
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<u32> {
        self.dist[a][b]
    }

    pub fn distance(&self, a: &str, b: &str) -> Result<Option<u32>> {
        let find = |s: &str| {
            self.names
                .binary_search_by(|n| n.as_str().cmp(s))
                .map_err(|_| Error::UnknownNode(s.to_string()))
        };
        Ok(self.dist[find(a)?][find(b)?])
    }
}

pub fn shortest_paths(net: &MultiplexNetwork, mode: LayerMode) -> DistanceMatrix {
    DistanceMatrix::of(&Graph::from_network(net, mode))
}

/// Closeness from one BFS row: component size over the distance sum,
/// `None` for isolated nodes.
fn closeness_from_row(row: &[Option<u32>]) -> Option<f64> {
    let (n, total) = row
        .iter()
        .flatten()
        .fold((0usize, 0u64), |(n, t), &d| (n + 1, t + u64::from(d)));
    (n >= 2).then(|| n as f64 / total as f64)
}

/// Closeness of every node, in graph index order.
pub fn closeness_all(graph: &Graph) -> Vec<Option<f64>> {
    (0..graph.node_count())
        .into_par_iter()
        .map(|s| closeness_from_row(&graph.bfs(s)))
        .collect()
}

pub fn closeness(net: &MultiplexNetwork, stem: &str, mode: LayerMode) -> Result<Option<f64>> {
    let g = Graph::from_network(net, mode);
    let i = g.index_of(stem).ok_or_else(|| Error::UnknownNode(stem.to_string()))?;
    Ok(closeness_from_row(&g.bfs(i)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityRow {
    pub stem: String,
    pub closeness: Option<f64>,
    pub degree: usize,
    pub component_size: usize,
}

pub fn centrality_report(graph: &Graph) -> Vec<CentralityRow> {
    let close = closeness_all(graph);
    let (comp, sizes) = graph.components();
    (0..graph.node_count())
        .map(|i| CentralityRow {
            stem: graph.name(i).to_string(),
            closeness: close[i],
            degree: graph.degree(i),
            component_size: sizes[comp[i]],
        })
        .collect()
}

/// Writes `stem,closeness,degree,component_size`; undefined closeness is
/// left empty.
pub fn write_centrality_csv<W: Write>(rows: &[CentralityRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["stem", "closeness", "degree", "component_size"])?;
    for r in rows {
        w.write_record([
            r.stem.clone(),
            r.closeness.map(|c| c.to_string()).unwrap_or_default(),
            r.degree.to_string(),
            r.component_size.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedConcept {
    pub stem: String,
    pub closeness: f64,
}

/// Top concepts of the largest component by descending closeness, ties
/// broken by stem.
pub fn rank_graph(graph: &Graph, top_k: usize) -> Result<Vec<RankedConcept>> {
    if top_k == 0 {
        return Err(Error::InvalidArgument("top_k must be positive".to_string()));
    }
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let lcc = graph.largest_component();
    let mut ranked: Vec<RankedConcept> = lcc
        .par_iter()
        .filter_map(|&i| {
            closeness_from_row(&graph.bfs(i)).map(|c| RankedConcept {
                stem: graph.name(i).to_string(),
                closeness: c,
            })
        })
        .collect();
    ranked.sort_by(|a, b| b.closeness.total_cmp(&a.closeness).then_with(|| a.stem.cmp(&b.stem)));
    ranked.truncate(top_k);
    Ok(ranked)
}

pub fn rank_concepts(net: &MultiplexNetwork, mode: LayerMode, top_k: usize) -> Result<Vec<RankedConcept>> {
    rank_graph(&Graph::from_network(net, mode), top_k)
}

/// Local clustering per node; nodes with fewer than two neighbours get 0.
pub fn local_clustering(graph: &Graph) -> Vec<f64> {
    (0..graph.node_count())
        .into_par_iter()
        .map(|i| {
            let nb = graph.neighbors(i);
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (x, &a) in nb.iter().enumerate() {
                links += nb[x + 1..].iter().filter(|&&b| graph.has_edge(a, b)).count();
            }
            links as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

/// Mean local clustering over all nodes; 0 for an empty graph.
pub fn mean_clustering(graph: &Graph) -> f64 {
    let local = local_clustering(graph);
    if local.is_empty() {
        0.0
    } else {
        local.iter().sum::<f64>() / local.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{canonical_pair, Concept};

    fn path() -> Graph {
        Graph::from_named_edges([], [("a", "b"), ("b", "c")])
    }

    fn complete(n: usize) -> Graph {
        let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(names, edges)
    }

    #[test]
    fn closeness_hand_values() {
        let c = closeness_all(&path());
        assert_eq!(c, [Some(1.0), Some(1.5), Some(1.0)]);
        assert!(closeness_all(&complete(4)).iter().all(|&x| x == Some(4.0 / 3.0)));
        assert_eq!(closeness_all(&complete(2)), [Some(2.0), Some(2.0)]);
        let isolated = Graph::from_named_edges(["x"], [("a", "b")]);
        assert_eq!(closeness_all(&isolated)[isolated.index_of("x").unwrap()], None);
    }

    fn two_layer() -> MultiplexNetwork {
        let mut net = MultiplexNetwork::default();
        for s in ["a", "b", "c"] {
            net.nodes.insert(s.into(), Concept::unlabeled(s));
        }
        net.syntactic.insert(canonical_pair("a", "b"), 1);
        net.synonym.insert(canonical_pair("b", "c"));
        net
    }

    #[test]
    fn multiplex_distances() {
        let net = two_layer();
        assert_eq!(shortest_paths(&net, LayerMode::Aggregate).distance("a", "c").unwrap(), Some(2));
        assert_eq!(shortest_paths(&net, LayerMode::SyntacticOnly).distance("a", "c").unwrap(), None);
        assert_eq!(shortest_paths(&net, LayerMode::SynonymOnly).distance("b", "c").unwrap(), Some(1));
        assert!(shortest_paths(&net, LayerMode::Aggregate).distance("a", "q").is_err());
        assert_eq!(closeness(&net, "b", LayerMode::Aggregate).unwrap(), Some(1.5));
    }

    #[test]
    fn ranking() {
        let star = Graph::from_named_edges([], [("hub", "x"), ("hub", "y"), ("hub", "a")]);
        let r = rank_graph(&star, 10).unwrap();
        assert_eq!(r[0].stem, "hub");
        let leaves: Vec<&str> = r[1..].iter().map(|c| c.stem.as_str()).collect();
        assert_eq!(leaves, ["a", "x", "y"]);
        assert_eq!(rank_graph(&star, 2).unwrap().len(), 2);
        assert!(matches!(rank_graph(&star, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(rank_graph(&Graph::default(), 3), Err(Error::EmptyGraph)));
        // only the largest component is ranked
        let split = Graph::from_named_edges([], [("p", "q"), ("a", "b"), ("b", "c")]);
        let stems: Vec<String> = rank_graph(&split, 10).unwrap().into_iter().map(|c| c.stem).collect();
        assert_eq!(stems, ["b", "a", "c"]);
    }

    #[test]
    fn clustering_hand_values() {
        let tri = Graph::from_named_edges([], [("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(mean_clustering(&tri), 1.0);
        assert_eq!(mean_clustering(&path()), 0.0);
        let pendant = Graph::from_named_edges([], [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")]);
        assert!((mean_clustering(&pendant) - (1.0 + 1.0 + 1.0 / 3.0) / 4.0).abs() < 1e-12);
        assert_eq!(mean_clustering(&Graph::default()), 0.0);
    }

    #[test]
    fn centrality_csv() {
        let rows = centrality_report(&Graph::from_named_edges(["z"], [("a", "b"), ("b", "c")]));
        let mut buf = Vec::new();
        write_centrality_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "stem,closeness,degree,component_size\na,1,1,3\nb,1.5,2,3\nc,1,1,3\nz,,0,1\n"
        );
    }
}
