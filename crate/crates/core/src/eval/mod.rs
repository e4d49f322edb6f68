//! Stratified cross-validation and the experiment sweeps built on it.

mod cv;
mod folds;
mod report;
mod sweep;

use thiserror::Error;

use crate::classifiers::ClassifierError;
use crate::spectral::SpectralError;

pub use cv::{cross_validate, CvReport, FoldResult};
pub use folds::{stratified_folds, FoldPlan};
pub use report::{write_cv_csv, write_sweep_csv, CV_CSV_HEADER, SWEEP_CSV_HEADER};
pub use sweep::{
    paper_grid, sweep_embedding_dim, sweep_hyperparameters, HpRecord, HpValue, HyperParam,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("need at least 2 folds, got {0}")]
    BadFoldCount(usize),
    #[error("class {class} has {count} samples, fewer than {n_folds} folds")]
    ClassTooSmall { class: usize, count: usize, n_folds: usize },
    #[error("{rows} feature rows, {labels} labels, {plan} fold assignments")]
    LengthMismatch { rows: usize, labels: usize, plan: usize },
    #[error("unknown hyperparameter {0:?} (expected n_trees, min_samples_leaf, max_depth, bootstrap)")]
    UnknownParam(String),
    #[error("bad value {value:?} for {param}")]
    BadValue { param: String, value: String },
    #[error("embedding dimension list is empty or contains 0")]
    BadDimensions,
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
