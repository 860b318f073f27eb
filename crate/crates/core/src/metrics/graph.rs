use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::network::MultiplexNetwork;

/// Which layers count as links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerMode {
    #[default]
    Aggregate,
    SyntacticOnly,
    SynonymOnly,
}

impl LayerMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LayerMode::Aggregate => "aggregate",
            LayerMode::SyntacticOnly => "syntactic_only",
            LayerMode::SynonymOnly => "synonym_only",
        }
    }
}

impl fmt::Display for LayerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LayerMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "aggregate" => Ok(LayerMode::Aggregate),
            "syntactic_only" | "syntactic" => Ok(LayerMode::SyntacticOnly),
            "synonym_only" | "synonym" => Ok(LayerMode::SynonymOnly),
            _ => Err(Error::InvalidArgument(format!(
                "unknown layer mode {s:?} (expected aggregate, syntactic_only or synonym_only)"
            ))),
        }
    }
}

/// Simple undirected graph over named nodes, with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from node names and index pairs. Self-loops and
    /// repeated pairs are dropped.
    pub fn from_edges(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) outside graph of {n} nodes");
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Graph { names, index, adj }
    }

    /// Builds a graph from named edges; nodes are the union of `nodes` and
    /// all endpoints, in sorted order.
    pub fn from_named_edges<'a>(
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Self {
        let edges: Vec<(&str, &str)> = edges.into_iter().collect();
        let mut names: Vec<String> = nodes
            .into_iter()
            .chain(edges.iter().flat_map(|(a, b)| [*a, *b]))
            .map(str::to_string)
            .collect();
        names.sort();
        names.dedup();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        Graph::from_edges(names, pairs)
    }

    /// View of a network in the given layer mode. All nodes are kept, so
    /// nodes without links in the chosen layers are isolated.
    pub fn from_network(net: &MultiplexNetwork, mode: LayerMode) -> Self {
        let syn = matches!(mode, LayerMode::Aggregate | LayerMode::SyntacticOnly);
        let sym = matches!(mode, LayerMode::Aggregate | LayerMode::SynonymOnly);
        let edges = net
            .syntactic
            .keys()
            .filter(|_| syn)
            .chain(net.synonym.iter().filter(|_| sym))
            .map(|(a, b)| (a.as_str(), b.as_str()));
        Graph::from_named_edges(net.nodes.keys().map(String::as_str), edges)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(low, high)` index pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.names.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components: component id per node (ids in order of each
    /// component's lowest node index) and component sizes.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.names.len();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut size = 0;
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(u) = stack.pop() {
                size += 1;
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        (comp, sizes)
    }

    /// Node indices of the largest component; ties go to the component
    /// holding the lexicographically smallest name.
    pub fn largest_component(&self) -> Vec<usize> {
        let (comp, sizes) = self.components();
        let Some(best) = (0..sizes.len()).max_by(|&a, &b| {
            let min_name = |c: usize| (0..comp.len()).filter(|&i| comp[i] == c).map(|i| &self.names[i]).min();
            sizes[a].cmp(&sizes[b]).then_with(|| min_name(b).cmp(&min_name(a)))
        }) else {
            return Vec::new();
        };
        (0..comp.len()).filter(|&i| comp[i] == best).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_mode_parsing() {
        assert_eq!("aggregate".parse::<LayerMode>().unwrap(), LayerMode::Aggregate);
        assert_eq!("syntactic-only".parse::<LayerMode>().unwrap(), LayerMode::SyntacticOnly);
        assert_eq!("synonym_only".parse::<LayerMode>().unwrap(), LayerMode::SynonymOnly);
        assert!(matches!("both".parse::<LayerMode>(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn dedup_and_self_loops_dropped() {
        let g = Graph::from_named_edges([], [("a", "b"), ("b", "a"), ("a", "a")]);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), [(0, 1)]);
    }

    #[test]
    fn components_and_largest() {
        let g = Graph::from_named_edges(["z"], [("a", "b"), ("c", "d"), ("d", "e")]);
        let (comp, sizes) = g.components();
        assert_eq!(sizes, [2, 3, 1]);
        assert_eq!(comp[g.index_of("z").unwrap()], 2);
        let lcc: Vec<&str> = g.largest_component().iter().map(|&i| g.name(i)).collect();
        assert_eq!(lcc, ["c", "d", "e"]);
        let tie = Graph::from_named_edges([], [("x", "y"), ("a", "b")]);
        let lcc: Vec<&str> = tie.largest_component().iter().map(|&i| tie.name(i)).collect();
        assert_eq!(lcc, ["a", "b"]);
    }
}
