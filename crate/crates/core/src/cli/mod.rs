//! The `specgraph` command line.
//!
//! Exit codes: 0 success, 1 a `--check` comparison fell outside tolerance,
//! 2 usage error, 3 data error.

mod commands;
mod format;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::classifiers::{ClassifierError, MaxFeatures};
use crate::config::{split_list, ConfigError, RunConfig};
use crate::eval::EvalError;
use crate::fetch::FetchError;
use crate::spectral::{EmbeddingDim, SpectralError};
use crate::tu::IngestError;

pub use format::{fmt_sig, render_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "specgraph", version, about = "Spectral-feature graph classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores, or $SPECGRAPH_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for the stratified fold split.
    #[arg(long = "seed-fold", global = true, value_name = "SEED")]
    pub seed_fold: Option<u64>,
    /// Seed for the random forest.
    #[arg(long = "seed-forest", global = true, value_name = "SEED")]
    pub seed_forest: Option<u64>,
    /// Write zeros for all timing columns and skip wall-clock lines.
    #[arg(long = "no-timings", global = true)]
    pub no_timings: bool,
    /// Dataset cache (default: $SPECGRAPH_CACHE, else ~/.cache/specgraph).
    #[arg(long = "cache-dir", global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Read datasets from DIR/<NAME>/ (or DIR itself) instead of the cache; never downloads.
    #[arg(long = "data-dir", global = true, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,
    /// Download URL with a {name} placeholder.
    #[arg(long = "url-template", global = true, value_name = "URL")]
    pub url_template: Option<String>,
    /// Output directory for CSV files.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Args, Default)]
pub struct DataArgs {
    /// Dataset names or aliases, comma-separated (default: all six).
    #[arg(short, long = "dataset", value_name = "NAME", value_delimiter = ',')]
    pub datasets: Vec<String>,
}

#[derive(Debug, Args, Default)]
pub struct ModelArgs {
    /// Classifiers: rfc, knn<K>, ridge (comma-separated).
    #[arg(short, long = "classifier", value_name = "NAME", value_delimiter = ',')]
    pub classifiers: Vec<String>,
    #[arg(long = "n-folds")]
    pub n_folds: Option<usize>,
    #[arg(long = "n-trees")]
    pub n_trees: Option<usize>,
    #[arg(long = "min-samples-leaf")]
    pub min_samples_leaf: Option<usize>,
    /// 0 for unlimited.
    #[arg(long = "max-depth")]
    pub max_depth: Option<usize>,
    #[arg(long, value_name = "BOOL")]
    pub bootstrap: Option<bool>,
    /// sqrt, all, or a count.
    #[arg(long = "max-features", value_parser = parse_max_features)]
    pub max_features: Option<MaxFeatures>,
    #[arg(long = "ridge-lambda")]
    pub ridge_lambda: Option<f64>,
}

fn parse_max_features(s: &str) -> Result<MaxFeatures, String> {
    s.parse()
}

fn parse_dim(s: &str) -> Result<EmbeddingDim, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Download datasets into the cache.
    Fetch {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Write one spectral-feature CSV per dataset.
    Embed {
        #[command(flatten)]
        data: DataArgs,
        /// Embedding width: a count or "auto" (average node count).
        #[arg(long, value_parser = parse_dim)]
        k: Option<EmbeddingDim>,
    },
    /// Fit a forest on a whole dataset and save it.
    Train {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model_args: ModelArgs,
        #[arg(long, value_parser = parse_dim)]
        k: Option<EmbeddingDim>,
        /// Where to write the model.
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
    },
    /// Classify a dataset with a saved forest.
    Predict {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Prediction CSV (default: stdout).
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// 10-fold cross-validation on each dataset.
    Bench {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model_args: ModelArgs,
        #[arg(long, value_parser = parse_dim)]
        k: Option<EmbeddingDim>,
        /// Compare against published accuracies; exit 1 if any falls outside tolerance.
        #[arg(long)]
        check: bool,
    },
    /// Cross-validation at several embedding widths.
    #[command(name = "sweep-k")]
    SweepK {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model_args: ModelArgs,
        /// Comma-separated widths (default 1,5,10,25,50).
        #[arg(long, value_name = "LIST")]
        k: Option<String>,
        #[arg(long)]
        check: bool,
    },
    /// Vary one forest hyperparameter at a time.
    #[command(name = "sweep-hp")]
    SweepHp {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        model_args: ModelArgs,
        #[arg(long, value_parser = parse_dim)]
        k: Option<EmbeddingDim>,
        /// n_trees (n_estimators), min_samples_leaf, max_depth, bootstrap; default all.
        #[arg(long = "param", value_name = "NAME", value_delimiter = ',')]
        params: Vec<String>,
        /// Grid override for a single --param.
        #[arg(long, value_name = "LIST")]
        values: Option<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

macro_rules! data_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Data(e.to_string())
            }
        }
    )*};
}
data_error!(FetchError, IngestError, SpectralError, std::io::Error);

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ClassifierError> for CliError {
    fn from(e: ClassifierError) -> Self {
        match e {
            ClassifierError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::BadFoldCount(_)
            | EvalError::UnknownParam(_)
            | EvalError::BadValue { .. }
            | EvalError::BadDimensions => CliError::Usage(e.to_string()),
            EvalError::Classifier(c) => c.into(),
            _ => CliError::Data(e.to_string()),
        }
    }
}

/// Everything a command needs after flags, environment and file are merged.
#[derive(Debug, Clone)]
pub struct Context {
    pub cfg: RunConfig,
    pub data_dir: Option<PathBuf>,
}

fn merge(global: &GlobalArgs) -> Result<Context, CliError> {
    let mut cfg = match &global.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    cfg.apply_env()?;
    if let Some(t) = global.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        cfg.threads = Some(t);
    }
    if let Some(s) = global.seed_fold {
        cfg.fold_seed = s;
    }
    if let Some(s) = global.seed_forest {
        cfg.forest.seed = s;
    }
    if global.no_timings {
        cfg.timings = false;
    }
    if let Some(c) = &global.cache_dir {
        cfg.cache_dir = c.clone();
    }
    if let Some(u) = &global.url_template {
        cfg.url_template = u.clone();
    }
    if let Some(o) = &global.out {
        cfg.out_dir = o.clone();
    }
    Ok(Context {
        cfg,
        data_dir: global.data_dir.clone(),
    })
}

fn apply_data(cfg: &mut RunConfig, data: &DataArgs) {
    let names: Vec<String> = data.datasets.iter().flat_map(|d| split_list(d)).collect();
    if !names.is_empty() {
        cfg.datasets = names;
    }
}

fn apply_model(cfg: &mut RunConfig, m: &ModelArgs) -> Result<(), CliError> {
    if !m.classifiers.is_empty() {
        cfg.classifier_names = m.classifiers.iter().flat_map(|c| split_list(c)).collect();
    }
    if let Some(n) = m.n_folds {
        cfg.n_folds = n;
    }
    if let Some(n) = m.n_trees {
        cfg.forest.n_trees = n;
    }
    if let Some(n) = m.min_samples_leaf {
        cfg.forest.min_samples_leaf = n;
    }
    if let Some(d) = m.max_depth {
        cfg.forest.max_depth = if d == 0 { usize::MAX } else { d };
    }
    if let Some(b) = m.bootstrap {
        cfg.forest.bootstrap = b;
    }
    if let Some(f) = m.max_features {
        cfg.forest.max_features = f;
    }
    if let Some(l) = m.ridge_lambda {
        if !(l > 0.0 && l.is_finite()) {
            return Err(CliError::Usage("--ridge-lambda must be positive".into()));
        }
        cfg.ridge_lambda = l;
    }
    cfg.forest.validate()?;
    Ok(())
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();

    let outcome = merge(&cli.global).and_then(|mut ctx| {
        let threads = ctx.cfg.threads;
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            pool = pool.num_threads(n);
        }
        let pool = pool
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        pool.install(|| commands::dispatch(&cli.command, &mut ctx))
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
