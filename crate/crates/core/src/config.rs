//! Run configuration: defaults, an optional TOML file, then environment and
//! command-line overrides (applied by the caller, later wins).
//!
//! Recognised file keys:
//!
//! ```toml
//! [data]
//! cache_dir = "/var/cache/specgraph"
//! url_template = "https://example.org/{name}.zip"
//!
//! [run]
//! datasets = ["MUTAG", "PTC_MR"]
//! k = "auto"            # or an integer
//! classifiers = ["rfc"] # rfc, knn<K>, ridge
//! n_folds = 10
//! fold_seed = 1
//! threads = 4
//! out_dir = "results"
//! timings = true
//!
//! [forest]
//! n_trees = 500
//! min_samples_leaf = 1
//! max_depth = 100       # 0 = unlimited
//! bootstrap = true
//! max_features = "sqrt" # sqrt, all, or an integer
//! seed = 1
//!
//! [ridge]
//! lambda = 1.0
//! ```

use std::path::{Path, PathBuf};

use thiserror::Error;
use toml::{Table, Value};

use crate::classifiers::{ClassifierSpec, ForestConfig, MaxFeatures, DEFAULT_RIDGE_LAMBDA};
use crate::datasets;
use crate::fetch::DEFAULT_URL_TEMPLATE;
use crate::spectral::EmbeddingDim;

pub const ENV_CACHE: &str = "SPECGRAPH_CACHE";
pub const ENV_THREADS: &str = "SPECGRAPH_THREADS";
pub const ENV_URL_TEMPLATE: &str = "SPECGRAPH_URL_TEMPLATE";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Syntax { path: PathBuf, message: String },
    #[error("config key {key}: {message}")]
    Key { key: String, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub datasets: Vec<String>,
    pub k: EmbeddingDim,
    /// Classifier names; forest and ridge entries pick up `forest` and
    /// `ridge_lambda` when resolved through [`RunConfig::classifiers`].
    pub classifier_names: Vec<String>,
    pub forest: ForestConfig,
    pub ridge_lambda: f64,
    pub n_folds: usize,
    pub fold_seed: u64,
    pub out_dir: PathBuf,
    pub cache_dir: PathBuf,
    pub url_template: String,
    /// Worker count; `None` uses every core.
    pub threads: Option<usize>,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            datasets: datasets::known_names().iter().map(|s| s.to_string()).collect(),
            k: EmbeddingDim::Auto,
            classifier_names: vec!["rfc".into()],
            forest: ForestConfig::default(),
            ridge_lambda: DEFAULT_RIDGE_LAMBDA,
            n_folds: 10,
            fold_seed: 1,
            out_dir: PathBuf::from("."),
            cache_dir: default_cache_dir(),
            url_template: DEFAULT_URL_TEMPLATE.into(),
            threads: None,
            timings: true,
        }
    }
}

/// `$XDG_CACHE_HOME/specgraph`, else `$HOME/.cache/specgraph`, else `./.specgraph-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(x).join("specgraph");
    }
    if let Some(h) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
        return PathBuf::from(h).join(".cache").join("specgraph");
    }
    PathBuf::from(".specgraph-cache")
}

fn key_err(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Key {
        key: key.into(),
        message: message.into(),
    }
}

fn as_count(key: &str, v: &Value, min: i64) -> Result<usize, ConfigError> {
    match v.as_integer() {
        Some(n) if n >= min => Ok(n as usize),
        _ => Err(key_err(key, format!("expected an integer >= {min}"))),
    }
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or_else(|| key_err(key, "expected a string"))
}

fn as_str_list(key: &str, v: &Value) -> Result<Vec<String>, ConfigError> {
    match v {
        Value::String(s) => Ok(split_list(s)),
        Value::Array(items) => items.iter().map(|i| as_str(key, i).map(str::to_string)).collect(),
        _ => Err(key_err(key, "expected a string or an array of strings")),
    }
}

/// Splits `a,b, c` into trimmed, non-empty pieces.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::to_string).collect()
}

impl RunConfig {
    /// Defaults overlaid with the file at `path`.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let table: Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Syntax {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })?;
        let mut cfg = RunConfig::default();
        cfg.apply_table(&table)?;
        Ok(cfg)
    }

    pub fn apply_table(&mut self, table: &Table) -> Result<(), ConfigError> {
        for (section, body) in table {
            let body = body
                .as_table()
                .ok_or_else(|| key_err(section, "expected a [section]"))?;
            for (name, v) in body {
                let key = format!("{section}.{name}");
                self.apply_key(&key, v)?;
            }
        }
        Ok(())
    }

    fn apply_key(&mut self, key: &str, v: &Value) -> Result<(), ConfigError> {
        match key {
            "data.cache_dir" => self.cache_dir = as_str(key, v)?.into(),
            "data.url_template" => self.url_template = as_str(key, v)?.into(),
            "run.datasets" => self.datasets = as_str_list(key, v)?,
            "run.k" => {
                self.k = match v {
                    Value::Integer(n) if *n >= 1 => EmbeddingDim::Fixed(*n as usize),
                    Value::String(s) => s.parse().map_err(|e: String| key_err(key, e))?,
                    _ => return Err(key_err(key, "expected \"auto\" or a positive integer")),
                }
            }
            "run.classifiers" | "run.classifier" => {
                let names = as_str_list(key, v)?;
                for n in &names {
                    n.parse::<ClassifierSpec>().map_err(|e| key_err(key, e))?;
                }
                self.classifier_names = names;
            }
            "run.n_folds" => self.n_folds = as_count(key, v, 2)?,
            "run.fold_seed" => self.fold_seed = as_count(key, v, 0)? as u64,
            "run.threads" => self.threads = Some(as_count(key, v, 1)?),
            "run.out_dir" => self.out_dir = as_str(key, v)?.into(),
            "run.timings" => self.timings = v.as_bool().ok_or_else(|| key_err(key, "expected true or false"))?,
            "forest.n_trees" => self.forest.n_trees = as_count(key, v, 1)?,
            "forest.min_samples_leaf" => self.forest.min_samples_leaf = as_count(key, v, 1)?,
            "forest.max_depth" => {
                self.forest.max_depth = match as_count(key, v, 0)? {
                    0 => usize::MAX,
                    d => d,
                }
            }
            "forest.bootstrap" => {
                self.forest.bootstrap = v.as_bool().ok_or_else(|| key_err(key, "expected true or false"))?
            }
            "forest.max_features" => {
                self.forest.max_features = match v {
                    Value::Integer(n) if *n >= 1 => MaxFeatures::Count(*n as usize),
                    Value::String(s) => s.parse().map_err(|e: String| key_err(key, e))?,
                    _ => return Err(key_err(key, "expected \"sqrt\", \"all\" or a positive integer")),
                }
            }
            "forest.seed" => self.forest.seed = as_count(key, v, 0)? as u64,
            "ridge.lambda" => {
                let l = v
                    .as_float()
                    .or_else(|| v.as_integer().map(|i| i as f64))
                    .ok_or_else(|| key_err(key, "expected a number"))?;
                if !(l > 0.0 && l.is_finite()) {
                    return Err(key_err(key, "must be positive"));
                }
                self.ridge_lambda = l;
            }
            other => return Err(key_err(other, "unknown key")),
        }
        Ok(())
    }

    /// Applies `SPECGRAPH_CACHE`, `SPECGRAPH_THREADS` and `SPECGRAPH_URL_TEMPLATE`.
    pub fn apply_env(&mut self) -> Result<(), ConfigError> {
        self.apply_env_from(|k| std::env::var(k).ok())
    }

    pub fn apply_env_from(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<(), ConfigError> {
        if let Some(c) = get(ENV_CACHE).filter(|s| !s.is_empty()) {
            self.cache_dir = c.into();
        }
        if let Some(u) = get(ENV_URL_TEMPLATE).filter(|s| !s.is_empty()) {
            self.url_template = u;
        }
        if let Some(t) = get(ENV_THREADS).filter(|s| !s.is_empty()) {
            match t.trim().parse::<usize>() {
                Ok(n) if n >= 1 => self.threads = Some(n),
                _ => return Err(key_err(ENV_THREADS, format!("expected a positive integer, got {t:?}"))),
            }
        }
        Ok(())
    }

    /// Resolved classifiers, with forest and ridge settings filled in.
    pub fn classifiers(&self) -> Result<Vec<ClassifierSpec>, String> {
        self.classifier_names
            .iter()
            .map(|n| {
                Ok(match n.parse::<ClassifierSpec>()? {
                    ClassifierSpec::Forest(_) => ClassifierSpec::Forest(self.forest.clone()),
                    ClassifierSpec::Ridge { .. } => ClassifierSpec::Ridge {
                        lambda: self.ridge_lambda,
                    },
                    knn => knn,
                })
            })
            .collect()
    }
}
