use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::CommunityPartition;
use crate::error::{Error, Result};
use crate::network::{EdgeClass, MultiplexNetwork};

pub enum SubgraphMode<'p> {
    /// Target plus its neighbours in either layer.
    Neighbors,
    /// Every node sharing the target's community.
    Community(&'p CommunityPartition),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedEdge {
    pub source: String,
    pub target: String,
    pub class: EdgeClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    pub network: MultiplexNetwork,
    pub edges: Vec<ClassifiedEdge>,
}

/// Edge classes for every link of `net`: syntactic links by endpoint
/// valence, synonym links as their own class.
pub fn classify_edges(net: &MultiplexNetwork) -> Vec<ClassifiedEdge> {
    let syntactic = net.syntactic.keys().map(|(a, b)| ClassifiedEdge {
        source: a.clone(),
        target: b.clone(),
        class: EdgeClass::syntactic(net, a, b),
    });
    let synonym = net.synonym.iter().map(|(a, b)| ClassifiedEdge {
        source: a.clone(),
        target: b.clone(),
        class: EdgeClass::Synonym,
    });
    syntactic.chain(synonym).collect()
}

/// Induced two-layer subnetwork around `target`.
pub fn neighborhood_subgraph(net: &MultiplexNetwork, target: &str, mode: SubgraphMode) -> Result<Neighborhood> {
    net.concept(target)?;
    let keep: BTreeSet<String> = match mode {
        SubgraphMode::Neighbors => net
            .neighbors(target)
            .into_iter()
            .map(str::to_string)
            .chain([target.to_string()])
            .collect(),
        SubgraphMode::Community(partition) => {
            let id = partition
                .communities
                .get(target)
                .ok_or_else(|| Error::InvalidArgument(format!("{target:?} is not in the partition")))?;
            partition
                .communities
                .iter()
                .filter(|(_, c)| *c == id)
                .map(|(s, _)| s.clone())
                .collect()
        }
    };
    let network = net.induced(&keep);
    let edges = classify_edges(&network);
    Ok(Neighborhood { network, edges })
}
