//! Affect and semantic resources: valence norms, emotion associations,
//! synonym/antonym tables, and the stemmer that keys them all.

mod emotion;
pub mod porter;
mod relations;
mod valence;

pub use emotion::{load_emotion_lexicon, Emotion, EmotionLexicon, EmotionSet};
pub use porter::stem;
pub use relations::{load_antonyms, load_synonyms, AntonymLexicon, PairRelation, SynonymLexicon};
pub use valence::{
    load_valence_norms, quantile_linear, ValenceEntry, ValenceLabel, ValenceLexicon, ValenceOptions,
    ValenceScale,
};

/// The resources a network build draws on. Every member is optional so that
/// partial builds (syntax only, no affect) remain possible.
#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub valence: Option<ValenceLexicon>,
    pub emotions: Option<EmotionLexicon>,
    pub synonyms: Option<SynonymLexicon>,
    pub antonyms: Option<AntonymLexicon>,
}
