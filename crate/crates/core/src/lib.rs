//! Textual forma mentis networks: multiplex lexical networks built from
//! syntax and synonymy, with valence and emotion labels on concepts.

pub mod analysis;
pub mod error;
pub mod ingest;
pub mod lexicons;
pub mod metrics;
pub mod network;
pub mod seed;
pub mod stats;

pub use error::{Error, Result, RowProblem};
pub use lexicons::Lexicons;
pub use metrics::{Graph, LayerMode};
pub use network::{Concept, MultiplexNetwork};
