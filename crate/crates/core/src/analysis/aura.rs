use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::lexicons::ValenceLabel;
use crate::network::MultiplexNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aura {
    Positive,
    Neutral,
    Negative,
    /// Two or more classes share the top count.
    Mixed,
    /// No rated neighbours.
    Undetermined,
}

impl Aura {
    pub fn as_str(self) -> &'static str {
        match self {
            Aura::Positive => "positive",
            Aura::Neutral => "neutral",
            Aura::Negative => "negative",
            Aura::Mixed => "mixed",
            Aura::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Aura {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ValenceFractions {
    pub positive: f64,
    pub neutral: f64,
    pub negative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuraReport {
    pub target: String,
    pub neighbors: usize,
    pub positive: usize,
    pub neutral: usize,
    pub negative: usize,
    pub unrated: usize,
    /// Over rated neighbours only; absent when none are rated.
    pub fractions: Option<ValenceFractions>,
    pub aura: Aura,
}

/// Mode of valence labels among the distinct neighbours of `target` in
/// either layer.
pub fn valence_aura(net: &MultiplexNetwork, target: &str) -> Result<AuraReport> {
    net.concept(target)?;
    let mut counts = [0usize; 4];
    let neighbors = net.neighbors(target);
    for n in &neighbors {
        let slot = match net.nodes[*n].valence_label {
            ValenceLabel::Positive => 0,
            ValenceLabel::Neutral => 1,
            ValenceLabel::Negative => 2,
            ValenceLabel::Unrated => 3,
        };
        counts[slot] += 1;
    }
    let rated = counts[0] + counts[1] + counts[2];
    let (fractions, aura) = if rated == 0 {
        (None, Aura::Undetermined)
    } else {
        let top = counts[..3].iter().copied().max().unwrap_or(0);
        let winners: Vec<usize> = (0..3).filter(|&i| counts[i] == top).collect();
        let aura = match winners.as_slice() {
            [0] => Aura::Positive,
            [1] => Aura::Neutral,
            [2] => Aura::Negative,
            _ => Aura::Mixed,
        };
        let r = rated as f64;
        let fr = ValenceFractions {
            positive: counts[0] as f64 / r,
            neutral: counts[1] as f64 / r,
            negative: counts[2] as f64 / r,
        };
        (Some(fr), aura)
    };
    Ok(AuraReport {
        target: target.to_string(),
        neighbors: neighbors.len(),
        positive: counts[0],
        neutral: counts[1],
        negative: counts[2],
        unrated: counts[3],
        fractions,
        aura,
    })
}
