//! The two-layer lexical network: syntactic links from parsed text and
//! synonym links from a lexicon, over stemmed concepts carrying affect labels.

mod build;
mod graphml;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicons::{EmotionSet, ValenceLabel};

pub use build::{
    add_synonym_layer, build_network, concept_key, extract_syntactic_edges, normalize_word, token_class,
    BuildOptions, BuildSummary, SentenceEdges, TokenClass, ValenceCounts,
};
pub use graphml::{read_graphml, write_graphml};

/// Negation particles recognised as concept nodes, after stemming.
pub const NEGATION_STEMS: [&str; 3] = ["never", "no", "not"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concept {
    pub stem: String,
    pub valence_label: ValenceLabel,
    pub valence_score: Option<f64>,
    pub emotions: EmotionSet,
    pub is_negation_marker: bool,
}

impl Concept {
    pub fn unlabeled(stem: impl Into<String>) -> Self {
        let stem = stem.into();
        Concept {
            is_negation_marker: NEGATION_STEMS.contains(&stem.as_str()),
            stem,
            valence_label: ValenceLabel::Unrated,
            valence_score: None,
            emotions: EmotionSet::EMPTY,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub corpus_id: String,
    pub config_hash: String,
    /// Top-level run seed; building itself draws no random numbers.
    #[serde(default)]
    pub seed: u64,
    pub sentences: usize,
    /// Dependency direction is dropped when edges are merged.
    pub edge_direction: String,
}

/// Edge key with endpoints in lexicographic order.
pub type StemPair = (String, String);

pub fn canonical_pair(a: &str, b: &str) -> StemPair {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Valence class of a link, matching the usual figure legend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeClass {
    PositivePositive,
    NegativeNegative,
    /// A positive concept linked to a negative one.
    Mixed,
    Synonym,
    Other,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::PositivePositive => "positive-positive",
            EdgeClass::NegativeNegative => "negative-negative",
            EdgeClass::Mixed => "mixed",
            EdgeClass::Synonym => "synonym",
            EdgeClass::Other => "other",
        }
    }

    /// Class of a syntactic link from its endpoint labels.
    pub fn syntactic(net: &MultiplexNetwork, a: &str, b: &str) -> EdgeClass {
        let label = |s: &str| net.nodes.get(s).map_or(ValenceLabel::Unrated, |c| c.valence_label);
        use ValenceLabel::{Negative, Positive};
        match (label(a), label(b)) {
            (Positive, Positive) => EdgeClass::PositivePositive,
            (Negative, Negative) => EdgeClass::NegativeNegative,
            (Positive, Negative) | (Negative, Positive) => EdgeClass::Mixed,
            _ => EdgeClass::Other,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MultiplexNetwork {
    pub nodes: BTreeMap<String, Concept>,
    /// Syntactic links with the number of sentences producing them.
    pub syntactic: BTreeMap<StemPair, u32>,
    pub synonym: BTreeSet<StemPair>,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct SyntacticEdgeRecord {
    source: String,
    target: String,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct SynonymEdgeRecord {
    source: String,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct NetworkRecord {
    provenance: Provenance,
    nodes: Vec<Concept>,
    syntactic_edges: Vec<SyntacticEdgeRecord>,
    synonym_edges: Vec<SynonymEdgeRecord>,
}

impl MultiplexNetwork {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, stem: &str) -> bool {
        self.nodes.contains_key(stem)
    }

    pub fn concept(&self, stem: &str) -> Result<&Concept> {
        self.nodes.get(stem).ok_or_else(|| Error::UnknownNode(stem.to_string()))
    }

    /// Distinct pairs linked in either layer.
    pub fn aggregate_edges(&self) -> BTreeSet<StemPair> {
        self.syntactic.keys().cloned().chain(self.synonym.iter().cloned()).collect()
    }

    /// Distinct neighbours of `stem` over both layers, sorted.
    pub fn neighbors(&self, stem: &str) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for (a, b) in self.syntactic.keys().chain(self.synonym.iter()) {
            if a == stem {
                out.insert(b.as_str());
            } else if b == stem {
                out.insert(a.as_str());
            }
        }
        out
    }

    pub fn syntactic_neighbors(&self, stem: &str) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for (a, b) in self.syntactic.keys() {
            if a == stem {
                out.insert(b.as_str());
            } else if b == stem {
                out.insert(a.as_str());
            }
        }
        out
    }

    /// Subnetwork induced by `keep` in both layers.
    pub fn induced(&self, keep: &BTreeSet<String>) -> MultiplexNetwork {
        let inside = |(a, b): &StemPair| keep.contains(a) && keep.contains(b);
        MultiplexNetwork {
            nodes: self
                .nodes
                .iter()
                .filter(|(k, _)| keep.contains(*k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            syntactic: self
                .syntactic
                .iter()
                .filter(|(e, _)| inside(e))
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
            synonym: self.synonym.iter().filter(|e| inside(e)).cloned().collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Checks the structural invariants, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let corrupt = |msg: String| Err(Error::CorruptNetwork(msg));
        for (key, c) in &self.nodes {
            if key != &c.stem {
                return corrupt(format!("node key {key:?} differs from its stem {:?}", c.stem));
            }
            if c.stem.is_empty() {
                return corrupt("empty stem".to_string());
            }
            let rated = c.valence_label != ValenceLabel::Unrated;
            if rated != c.valence_score.is_some() {
                return corrupt(format!(
                    "valence label/score mismatch on {:?}: label {} with score {:?}",
                    c.stem, c.valence_label, c.valence_score
                ));
            }
            if c.is_negation_marker && !NEGATION_STEMS.contains(&c.stem.as_str()) {
                return corrupt(format!("{:?} flagged as negation marker", c.stem));
            }
        }
        let layers = self
            .syntactic
            .keys()
            .map(|e| ("syntactic", e))
            .chain(self.synonym.iter().map(|e| ("synonym", e)));
        for (layer, (a, b)) in layers {
            if a == b {
                return corrupt(format!("self-loop on {a:?} in {layer} layer"));
            }
            if a > b {
                return corrupt(format!("{layer} edge ({a:?}, {b:?}) not in canonical order"));
            }
            for end in [a, b] {
                if !self.nodes.contains_key(end) {
                    return corrupt(format!("{layer} edge endpoint {end:?} is not a node"));
                }
            }
        }
        if let Some(((a, b), _)) = self.syntactic.iter().find(|(_, c)| **c == 0) {
            return corrupt(format!("syntactic edge ({a:?}, {b:?}) has zero count"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let record = NetworkRecord {
            provenance: self.provenance.clone(),
            nodes: self.nodes.values().cloned().collect(),
            syntactic_edges: self
                .syntactic
                .iter()
                .map(|((a, b), c)| SyntacticEdgeRecord {
                    source: a.clone(),
                    target: b.clone(),
                    count: *c,
                })
                .collect(),
            synonym_edges: self
                .synonym
                .iter()
                .map(|(a, b)| SynonymEdgeRecord {
                    source: a.clone(),
                    target: b.clone(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&record)?;
        out.push('\n');
        Ok(out)
    }

    /// Parses and validates a network written by [`MultiplexNetwork::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let record: NetworkRecord =
            serde_json::from_str(text).map_err(|e| Error::CorruptNetwork(format!("unreadable network JSON: {e}")))?;
        let mut net = MultiplexNetwork {
            provenance: record.provenance,
            ..Default::default()
        };
        for c in record.nodes {
            if net.nodes.contains_key(&c.stem) {
                return Err(Error::CorruptNetwork(format!("duplicate node {:?}", c.stem)));
            }
            net.nodes.insert(c.stem.clone(), c);
        }
        for e in record.syntactic_edges {
            if net.syntactic.insert((e.source.clone(), e.target.clone()), e.count).is_some() {
                return Err(Error::CorruptNetwork(format!(
                    "duplicate syntactic edge ({:?}, {:?})",
                    e.source, e.target
                )));
            }
        }
        for e in record.synonym_edges {
            if !net.synonym.insert((e.source.clone(), e.target.clone())) {
                return Err(Error::CorruptNetwork(format!(
                    "duplicate synonym edge ({:?}, {:?})",
                    e.source, e.target
                )));
            }
        }
        net.validate()?;
        Ok(net)
    }
}
