//! `sembench`: build dictionary round-trip benchmarks, run models on them,
//! and compare the resulting rankings.

mod backends;
mod commands;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sembench_core::Variant;

/// Exit status 2: the invocation itself is wrong (bad flag, missing file,
/// invalid config or input data).
/// Exit status 3: the command ran but produced only partial results.
/// Exit status 1: anything else, e.g. an unreachable backend.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Partial(anyhow::Error),
    Runtime(anyhow::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Input(_) => 2,
            CliError::Partial(_) => 3,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub trait InputContext<T> {
    fn input(self) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> InputContext<T> for Result<T, E> {
    fn input(self) -> CliResult<T> {
        self.map_err(|e| CliError::Input(e.into()))
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// easy, mid, hard, rand, or all; comma separated for several.
    #[arg(long, global = true, value_delimiter = ',')]
    pub difficulty: Vec<String>,
    /// def or ex.
    #[arg(long, global = true)]
    pub variant: Option<Variant>,
    #[arg(long, global = true)]
    pub shots: Option<usize>,
    #[arg(long, global = true)]
    pub model: Option<String>,
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Use deterministic offline backends.
    #[arg(long, global = true)]
    pub mock: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    pub language: Option<String>,
    /// Few-shot exemplars, JSON Lines of {word, pos, definition, example}.
    #[arg(long, global = true)]
    pub exemplars: Option<PathBuf>,
    /// Directory with replacement prompt templates.
    #[arg(long, global = true)]
    pub templates: Option<PathBuf>,
    #[arg(long, global = true)]
    pub concurrency: Option<usize>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "sembench", version, about = "Dictionary round-trip semantic benchmark harness")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sense density and definition/example length statistics.
    LexiconStats,
    /// Sample target senses and write one benchmark file per difficulty.
    Build {
        /// Number of instances.
        #[arg(long)]
        n: Option<usize>,
        /// Allow targets without a dictionary example.
        #[arg(long)]
        allow_missing_examples: bool,
    },
    /// Run one model on one benchmark file.
    Run {
        #[arg(long)]
        bench: PathBuf,
    },
    /// Run one model on WiC pairs.
    Wic {
        /// Pairs as JSON Lines of {word, pos, context1, context2, gold}.
        #[arg(long, conflicts_with_all = ["data", "gold"], required_unless_present = "data")]
        wic: Option<PathBuf>,
        /// Original tab-separated data file; needs --gold.
        #[arg(long, requires = "gold")]
        data: Option<PathBuf>,
        /// Original gold file with one T/F label per line.
        #[arg(long, requires = "data")]
        gold: Option<PathBuf>,
    },
    /// Spearman correlation between two sets of model summaries.
    Correlate {
        /// Summary files or directories searched for summary.json.
        #[arg(long, num_args = 1.., required = true)]
        a: Vec<PathBuf>,
        #[arg(long, num_args = 1.., required = true)]
        b: Vec<PathBuf>,
        #[arg(long, default_value = "a")]
        label_a: String,
        #[arg(long, default_value = "b")]
        label_b: String,
    },
    /// Correlation against WiC as a function of benchmark size.
    Bootstrap {
        /// Run directories (results.jsonl + summary.json), one per model.
        #[arg(long, num_args = 1.., required = true)]
        results: Vec<PathBuf>,
        /// WiC summaries: files, or directories searched for summary.json.
        #[arg(long, num_args = 1.., required = true)]
        wic: Vec<PathBuf>,
        /// Explicit subset sizes, comma separated; defaults to start..=N by step.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        start: usize,
        #[arg(long, default_value_t = 50)]
        step: usize,
        #[arg(long, default_value_t = sembench_core::analysis::DEFAULT_ITERATIONS)]
        iterations: usize,
        /// Resample with replacement instead of drawing subsets.
        #[arg(long)]
        with_replacement: bool,
        /// Resample WiC pairs too; --wic must then name run directories.
        #[arg(long)]
        resample_wic: bool,
    },
    /// Recompute the digests recorded in an output directory's manifest.
    Verify { dir: PathBuf },
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let c = &cli.common;
    match cli.command {
        Command::LexiconStats => commands::lexicon_stats(c),
        Command::Build {
            n,
            allow_missing_examples,
        } => commands::build(c, n, allow_missing_examples),
        Command::Run { bench } => commands::run(c, &bench),
        Command::Wic { wic, data, gold } => commands::wic(c, wic.as_deref(), data.zip(gold)),
        Command::Correlate {
            a,
            b,
            label_a,
            label_b,
        } => commands::correlate(c, &a, &b, &label_a, &label_b),
        Command::Bootstrap {
            results,
            wic,
            sizes,
            start,
            step,
            iterations,
            with_replacement,
            resample_wic,
        } => commands::bootstrap(
            c,
            &commands::BootstrapArgs {
                results,
                wic,
                sizes,
                start,
                step,
                iterations,
                with_replacement,
                resample_wic,
            },
        ),
        Command::Verify { dir } => commands::verify(&dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Input(err) | CliError::Partial(err) | CliError::Runtime(err)) = &e;
            eprintln!("error: {err:#}");
            ExitCode::from(e.code())
        }
    }
}
