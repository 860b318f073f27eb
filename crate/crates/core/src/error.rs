use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// One rejected row of a lexicon or corpus file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowProblem {
    /// 1-based line number in the source file.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Formats a problem list for error messages, truncated after a handful of rows.
fn summarize(problems: &[RowProblem]) -> String {
    const SHOWN: usize = 8;
    let mut out = problems
        .iter()
        .take(SHOWN)
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ");
    if problems.len() > SHOWN {
        out.push_str(&format!("; ... {} more", problems.len() - SHOWN));
    }
    out
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: &'static str },

    #[error("{source_name}: {} bad row(s): {}", problems.len(), summarize(problems))]
    Load {
        source_name: String,
        problems: Vec<RowProblem>,
    },

    #[error("{source_name}: missing column {column:?}")]
    MissingColumn { source_name: String, column: String },

    #[error("{0}: no entries")]
    NoEntries(String),

    #[error("conllu line {line}: {message}")]
    Conllu { line: usize, message: String },

    #[error("no sentences")]
    NoSentences,

    #[error("unknown node {0:?}")]
    UnknownNode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corrupt network: {0}")]
    CorruptNetwork(String),

    #[error("empty sample")]
    EmptySample,

    #[error("empty graph")]
    EmptyGraph,

    #[error("benchmark: {0}")]
    Benchmark(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidWord { .. } => "invalid_word",
            Error::Load { .. } => "load",
            Error::MissingColumn { .. } => "missing_column",
            Error::NoEntries(_) => "no_entries",
            Error::Conllu { .. } => "conllu",
            Error::NoSentences => "no_sentences",
            Error::UnknownNode(_) => "unknown_node",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::CorruptNetwork(_) => "corrupt_network",
            Error::EmptySample => "empty_sample",
            Error::EmptyGraph => "empty_graph",
            Error::Benchmark(_) => "benchmark",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
