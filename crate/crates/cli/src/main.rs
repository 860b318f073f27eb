//! `tfmn`: build textual forma mentis networks from text and analyse them.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::{ExportFormat, Outcome, SubgraphKind};
use crate::config::{CorpusFormat, Overrides, Settings, LEXICON_DIR_ENV};
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "tfmn", version, about = "Textual forma mentis networks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// `key = value` config file; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    top_k: Option<usize>,
    #[arg(long, global = true)]
    min_words: Option<usize>,
    /// aggregate, syntactic or synonym
    #[arg(long, global = true)]
    layer_mode: Option<String>,
    /// output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// directory holding valence.csv, emotions.tsv, synonyms.tsv, antonyms.tsv
    #[arg(long, global = true)]
    lexicon_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    valence: Option<PathBuf>,
    #[arg(long, global = true)]
    emotions: Option<PathBuf>,
    #[arg(long, global = true)]
    synonyms: Option<PathBuf>,
    #[arg(long, global = true)]
    antonyms: Option<PathBuf>,
    /// one-word-per-line negation list replacing the bundled one
    #[arg(long, global = true)]
    negations: Option<PathBuf>,
    /// null-model realizations
    #[arg(long, global = true)]
    realizations: Option<usize>,
    #[arg(long, global = true)]
    swaps_per_edge: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus and write network JSON, GraphML and a build summary
    Build {
        corpus: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<CorpusFormat>,
        /// one network per document id
        #[arg(long)]
        per_document: bool,
    },
    /// Closeness ranking over the largest component, plus a centrality CSV
    Rank { network: PathBuf },
    /// Valence aura of target words
    Aura {
        network: PathBuf,
        #[arg(long = "target", value_delimiter = ',', required = true)]
        targets: Vec<String>,
    },
    /// Emotional profile of target words, with chart data
    Profile {
        network: PathBuf,
        #[arg(long = "target", value_delimiter = ',', required = true)]
        targets: Vec<String>,
    },
    /// Louvain communities and optional target neighbourhoods
    Communities {
        network: PathBuf,
        #[arg(long = "target", value_delimiter = ',')]
        targets: Vec<String>,
        #[arg(long, value_enum, default_value = "neighbors")]
        subgraph: SubgraphKind,
    },
    /// Mean clustering against a configuration-model ensemble
    Nulltest { network: PathBuf },
    /// Topic relevance of paragraph rankings on a free-association oracle
    Benchmark {
        corpus: Option<PathBuf>,
        #[arg(long)]
        topics: Option<PathBuf>,
        #[arg(long)]
        oracle: Option<PathBuf>,
        /// also test each topic on its own
        #[arg(long)]
        per_topic: bool,
    },
    /// Convert a network file
    Export {
        network: PathBuf,
        #[arg(long, value_enum)]
        to: ExportFormat,
        /// output file instead of the output directory
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Rank { .. } => "rank",
            Command::Aura { .. } => "aura",
            Command::Profile { .. } => "profile",
            Command::Communities { .. } => "communities",
            Command::Nulltest { .. } => "nulltest",
            Command::Benchmark { .. } => "benchmark",
            Command::Export { .. } => "export",
        }
    }
}

fn overrides(g: &Global, command: &Command) -> Overrides {
    let mut o = Overrides::default();
    o.set("seed", g.seed);
    o.set("top_k", g.top_k);
    o.set("min_words", g.min_words);
    o.set("layer_mode", g.layer_mode.clone());
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    o.set("out", path(&g.out));
    o.set("lexicon_dir", path(&g.lexicon_dir));
    o.set("valence", path(&g.valence));
    o.set("emotions", path(&g.emotions));
    o.set("synonyms", path(&g.synonyms));
    o.set("antonyms", path(&g.antonyms));
    o.set("negations", path(&g.negations));
    o.set("realizations", g.realizations);
    o.set("swaps_per_edge", g.swaps_per_edge);
    match command {
        Command::Build {
            corpus,
            format,
            per_document,
        } => {
            o.set("corpus", path(corpus));
            o.set("format", format.map(|f| if f == CorpusFormat::Conllu { "conllu" } else { "text" }));
            if *per_document {
                o.set("per_document", Some(true));
            }
        }
        Command::Benchmark {
            corpus, topics, oracle, ..
        } => {
            o.set("corpus", path(corpus));
            o.set("topics", path(topics));
            o.set("oracle", path(oracle));
        }
        _ => {}
    }
    o
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let flags = overrides(&cli.global, &cli.command);
    let s = Settings::resolve(
        cli.command.name(),
        cli.global.config.as_deref(),
        &flags,
        std::env::var(LEXICON_DIR_ENV).ok(),
    )?;
    match &cli.command {
        Command::Build { .. } => commands::build(&s),
        Command::Rank { network } => commands::rank(&s, network),
        Command::Aura { network, targets } => commands::aura(&s, network, targets),
        Command::Profile { network, targets } => commands::profile(&s, network, targets),
        Command::Communities {
            network,
            targets,
            subgraph,
        } => commands::communities(&s, network, targets, *subgraph),
        Command::Nulltest { network } => commands::nulltest(&s, network),
        Command::Benchmark { per_topic, .. } => commands::benchmark(&s, *per_topic),
        Command::Export { network, to, output } => commands::export(&s, network, *to, output.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            for p in outcome.written {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
