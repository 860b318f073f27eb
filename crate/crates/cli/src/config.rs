//! Run settings: defaults, `key = value` config files and flag overrides.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use tfmn::seed::sha256_hex;
use tfmn::LayerMode;

use crate::error::CliError;

pub const LEXICON_DIR_ENV: &str = "TFMN_LEXICON_DIR";

const DEFAULT_FILES: [(&str, &str); 4] = [
    ("valence", "valence.csv"),
    ("emotions", "emotions.tsv"),
    ("synonyms", "synonyms.tsv"),
    ("antonyms", "antonyms.tsv"),
];

const KEYS: [&str; 20] = [
    "corpus",
    "format",
    "valence",
    "emotions",
    "synonyms",
    "antonyms",
    "negations",
    "lexicon_dir",
    "valence_word_column",
    "valence_score_column",
    "min_words",
    "top_k",
    "seed",
    "out",
    "layer_mode",
    "realizations",
    "swaps_per_edge",
    "oracle",
    "topics",
    "per_document",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CorpusFormat {
    /// `id<TAB>text` lines
    Text,
    /// pre-parsed dependency trees
    Conllu,
}

impl CorpusFormat {
    fn as_str(self) -> &'static str {
        match self {
            CorpusFormat::Text => "text",
            CorpusFormat::Conllu => "conllu",
        }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub values: BTreeMap<&'static str, String>,
}

impl Overrides {
    pub fn set<T: ToString>(&mut self, key: &'static str, value: Option<T>) {
        if let Some(v) = value {
            self.values.insert(key, v.to_string());
        }
    }
}

/// Parses `key = value` lines. `#` starts a comment line; unknown and
/// repeated keys are errors.
pub fn parse_config_file(text: &str, source: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| CliError::Config {
            message: format!("{}:{}: {message}", source.display(), i + 1),
        };
        let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key = value".into()))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(bad(format!("unknown key {k:?}")));
        }
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return Err(bad(format!("key {k:?} given twice")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub corpus: Option<PathBuf>,
    pub format: CorpusFormat,
    pub valence: Option<PathBuf>,
    pub emotions: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub antonyms: Option<PathBuf>,
    pub negations: Option<PathBuf>,
    pub valence_word_column: String,
    pub valence_score_column: String,
    pub min_words: usize,
    pub top_k: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub layer_mode: LayerMode,
    pub realizations: usize,
    pub swaps_per_edge: usize,
    pub oracle: Option<PathBuf>,
    pub topics: Option<PathBuf>,
    pub per_document: bool,
    /// sha256 over the command name and every setting that can change output.
    pub config_hash: String,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Config {
        message: format!("bad value {v:?} for {key}"),
    })
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Config {
            message: format!("bad value {v:?} for {key}"),
        }),
    }
}

fn file_digest(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

impl Settings {
    /// Flags win over the config file, which wins over the lexicon-dir
    /// environment variable and built-in defaults. Referenced paths must exist.
    pub fn resolve(
        command: &str,
        config_file: Option<&Path>,
        flags: &Overrides,
        env_lexicon_dir: Option<String>,
    ) -> Result<Settings, CliError> {
        let file_values = match config_file {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                parse_config_file(&text, p)?
            }
            None => BTreeMap::new(),
        };
        let get = |k: &str| -> Option<String> { flags.values.get(k).cloned().or_else(|| file_values.get(k).cloned()) };
        let path = |k: &str| get(k).map(PathBuf::from);

        let lexicon_dir = path("lexicon_dir").or_else(|| env_lexicon_dir.filter(|s| !s.is_empty()).map(PathBuf::from));
        if let Some(d) = &lexicon_dir {
            if !d.is_dir() {
                return Err(CliError::Config {
                    message: format!("lexicon directory {} does not exist", d.display()),
                });
            }
        }
        let lexicon = |k: &str| -> Option<PathBuf> {
            path(k).or_else(|| {
                let (_, name) = DEFAULT_FILES.iter().find(|(key, _)| *key == k)?;
                let candidate = lexicon_dir.as_ref()?.join(name);
                candidate.is_file().then_some(candidate)
            })
        };

        let s = Settings {
            corpus: path("corpus"),
            format: match get("format").as_deref() {
                None | Some("text") => CorpusFormat::Text,
                Some("conllu") => CorpusFormat::Conllu,
                Some(other) => {
                    return Err(CliError::Config {
                        message: format!("bad value {other:?} for format (text or conllu)"),
                    })
                }
            },
            valence: lexicon("valence"),
            emotions: lexicon("emotions"),
            synonyms: lexicon("synonyms"),
            antonyms: lexicon("antonyms"),
            negations: path("negations"),
            valence_word_column: get("valence_word_column").unwrap_or_else(|| "Word".into()),
            valence_score_column: get("valence_score_column").unwrap_or_else(|| "V.Mean.Sum".into()),
            min_words: get("min_words").map(|v| parse_value("min_words", &v)).transpose()?.unwrap_or(3),
            top_k: get("top_k").map(|v| parse_value("top_k", &v)).transpose()?.unwrap_or(10),
            seed: get("seed").map(|v| parse_value("seed", &v)).transpose()?.unwrap_or(0),
            out: path("out").unwrap_or_else(|| PathBuf::from(".")),
            layer_mode: get("layer_mode")
                .map(|v| v.parse::<LayerMode>().map_err(|e| CliError::Config { message: e.to_string() }))
                .transpose()?
                .unwrap_or(LayerMode::Aggregate),
            realizations: get("realizations").map(|v| parse_value("realizations", &v)).transpose()?.unwrap_or(50),
            swaps_per_edge: get("swaps_per_edge")
                .map(|v| parse_value("swaps_per_edge", &v))
                .transpose()?
                .unwrap_or(10),
            oracle: path("oracle"),
            topics: path("topics"),
            per_document: get("per_document").map(|v| parse_bool("per_document", &v)).transpose()?.unwrap_or(false),
            config_hash: String::new(),
        };
        s.check_paths()?;
        let config_hash = s.hash(command)?;
        Ok(Settings { config_hash, ..s })
    }

    fn files(&self) -> [(&'static str, Option<&PathBuf>); 8] {
        [
            ("corpus", self.corpus.as_ref()),
            ("valence", self.valence.as_ref()),
            ("emotions", self.emotions.as_ref()),
            ("synonyms", self.synonyms.as_ref()),
            ("antonyms", self.antonyms.as_ref()),
            ("negations", self.negations.as_ref()),
            ("oracle", self.oracle.as_ref()),
            ("topics", self.topics.as_ref()),
        ]
    }

    fn check_paths(&self) -> Result<(), CliError> {
        for (key, p) in self.files() {
            if let Some(p) = p {
                if !p.is_file() {
                    return Err(CliError::Config {
                        message: format!("{key} file {} does not exist", p.display()),
                    });
                }
            }
        }
        Ok(())
    }

    /// Input files enter the hash by content, so the same run from another
    /// directory or into another output directory hashes identically.
    fn hash(&self, command: &str) -> Result<String, CliError> {
        let mut lines = vec![format!("command={command}")];
        for (key, p) in self.files() {
            if let Some(p) = p {
                lines.push(format!("{key}=sha256:{}", file_digest(p)?));
            }
        }
        lines.extend([
            format!("format={}", self.format.as_str()),
            format!("valence_word_column={}", self.valence_word_column),
            format!("valence_score_column={}", self.valence_score_column),
            format!("min_words={}", self.min_words),
            format!("top_k={}", self.top_k),
            format!("seed={}", self.seed),
            format!("layer_mode={}", self.layer_mode.as_str()),
            format!("realizations={}", self.realizations),
            format!("swaps_per_edge={}", self.swaps_per_edge),
            format!("per_document={}", self.per_document),
        ]);
        lines.sort();
        Ok(sha256_hex(lines.join("\n").as_bytes()))
    }
}
