use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::lexicons::{AntonymLexicon, Emotion, EmotionLexicon, EmotionSet};
use crate::network::MultiplexNetwork;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    /// Stem whose emotions were counted.
    pub stem: String,
    pub emotions: EmotionSet,
    /// Set when `stem` is the antonym of a negated neighbour.
    pub negated_from: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmotionalProfile {
    pub target: String,
    pub associates: usize,
    pub counts: BTreeMap<Emotion, usize>,
    /// Share of all emotion occurrences; empty when nothing carried an emotion.
    pub fractions: BTreeMap<Emotion, f64>,
    pub contributions: Vec<Contribution>,
    /// Negated neighbours with no antonym in the lexicon.
    pub missing_antonyms: Vec<String>,
}

impl EmotionalProfile {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// `emotion -> fraction` over all eight emotions, for bar charts.
    pub fn chart_data(&self) -> BTreeMap<&'static str, f64> {
        Emotion::ALL
            .iter()
            .map(|e| (e.name(), self.fractions.get(e).copied().unwrap_or(0.0)))
            .collect()
    }
}

/// Emotions elicited by the neighbours of `target`. A neighbour linked
/// syntactically to a negation also contributes its antonym's emotions.
/// Negation markers contribute nothing themselves.
pub fn emotional_profile(
    net: &MultiplexNetwork,
    target: &str,
    emotions: &EmotionLexicon,
    antonyms: &AntonymLexicon,
) -> Result<EmotionalProfile> {
    net.concept(target)?;
    let mut counts: BTreeMap<Emotion, usize> = Emotion::ALL.iter().map(|e| (*e, 0)).collect();
    let mut contributions = Vec::new();
    let mut missing_antonyms = Vec::new();
    let add = |set: EmotionSet, counts: &mut BTreeMap<Emotion, usize>| {
        for e in set.iter() {
            *counts.entry(e).or_default() += 1;
        }
    };
    let neighbors = net.neighbors(target);
    let mut associates = 0;
    for w in neighbors {
        let concept = &net.nodes[w];
        if concept.is_negation_marker {
            continue;
        }
        associates += 1;
        add(concept.emotions, &mut counts);
        contributions.push(Contribution {
            stem: w.to_string(),
            emotions: concept.emotions,
            negated_from: None,
        });
        let negated = net
            .syntactic_neighbors(w)
            .iter()
            .any(|n| net.nodes[*n].is_negation_marker);
        if negated {
            match antonyms.antonym(w) {
                Some(a) => {
                    let set = emotions.emotions(a);
                    add(set, &mut counts);
                    contributions.push(Contribution {
                        stem: a.to_string(),
                        emotions: set,
                        negated_from: Some(w.to_string()),
                    });
                }
                None => missing_antonyms.push(w.to_string()),
            }
        }
    }
    let total: usize = counts.values().sum();
    let fractions = if total == 0 {
        BTreeMap::new()
    } else {
        counts.iter().map(|(e, c)| (*e, *c as f64 / total as f64)).collect()
    };
    Ok(EmotionalProfile {
        target: target.to_string(),
        associates,
        counts,
        fractions,
        contributions,
        missing_antonyms,
    })
}
