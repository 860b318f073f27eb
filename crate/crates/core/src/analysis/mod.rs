//! Affect analyses over network neighbourhoods and community structure.

mod aura;
mod louvain;
mod neighborhood;
mod profile;

pub use aura::{valence_aura, Aura, AuraReport, ValenceFractions};
pub use louvain::{louvain, modularity, partition_labels, CommunityPartition};
pub use neighborhood::{classify_edges, neighborhood_subgraph, ClassifiedEdge, Neighborhood, SubgraphMode};
pub use profile::{emotional_profile, Contribution, EmotionalProfile};

pub use crate::network::EdgeClass;
