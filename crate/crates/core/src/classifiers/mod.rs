//! Classifiers over fixed-width embeddings: a class-balanced random forest,
//! k-nearest neighbours, and a one-vs-rest ridge classifier.

mod forest;
mod knn;
mod model_io;
mod ridge;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::FeatureMatrix;

pub use forest::{fit_forest, predict_forest, DecisionTree, ForestConfig, ForestModel, MaxFeatures, TreeNode};
pub use knn::{fit_predict_knn, KnnModel};
pub use model_io::{decode_forest, encode_forest, MODEL_MAGIC, MODEL_VERSION};
pub use ridge::{fit_predict_ridge, RidgeModel, DEFAULT_RIDGE_LAMBDA};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("{rows} feature rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("model expects {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("training labels contain a single class")]
    SingleClass,
    #[error("class {0} has no training samples")]
    MissingClass(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("model container: {0}")]
    Format(String),
}

/// `N / (C * count_c)` per class, so every class carries the same total weight.
pub fn balanced_class_weights(labels: &[usize]) -> Result<Vec<f64>, ClassifierError> {
    if labels.is_empty() {
        return Err(ClassifierError::EmptyTrainingSet);
    }
    let n_classes = labels.iter().max().unwrap() + 1;
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    let n = labels.len() as f64;
    counts
        .iter()
        .enumerate()
        .map(|(c, &count)| {
            if count == 0 {
                Err(ClassifierError::MissingClass(c))
            } else {
                Ok(n / (n_classes as f64 * count as f64))
            }
        })
        .collect()
}

/// `1 - sum p_i^2` over weighted class counts. `None` if all counts are zero.
pub fn gini_impurity(weighted_counts: &[f64]) -> Option<f64> {
    let total: f64 = weighted_counts.iter().sum();
    if total <= 0.0 {
        return None;
    }
    Some(1.0 - weighted_counts.iter().map(|c| (c / total).powi(2)).sum::<f64>())
}

/// Index of the largest entry, first one on ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn check_training(x: &FeatureMatrix, y: &[usize]) -> Result<(), ClassifierError> {
    if x.n_rows() == 0 || y.is_empty() {
        return Err(ClassifierError::EmptyTrainingSet);
    }
    if x.n_rows() != y.len() {
        return Err(ClassifierError::LengthMismatch {
            rows: x.n_rows(),
            labels: y.len(),
        });
    }
    Ok(())
}

/// A fitted model.
pub trait TrainedModel: Send + Sync {
    fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError>;
}

/// Anything that can be trained on one fold and asked about another.
pub trait Classifier: Sync {
    fn fit(&self, x: &FeatureMatrix, y: &[usize]) -> Result<Box<dyn TrainedModel>, ClassifierError>;

    /// Short identifier used in reports.
    fn name(&self) -> String;

    fn fit_predict(
        &self,
        train_x: &FeatureMatrix,
        train_y: &[usize],
        test_x: &FeatureMatrix,
    ) -> Result<Vec<usize>, ClassifierError> {
        self.fit(train_x, train_y)?.predict(test_x)
    }
}

impl TrainedModel for ForestModel {
    fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
        predict_forest(self, x)
    }
}

impl TrainedModel for RidgeModel {
    fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
        RidgeModel::predict(self, x)
    }
}

impl TrainedModel for KnnModel {
    fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
        KnnModel::predict(self, x)
    }
}

/// The built-in classifiers, selectable by name (`rfc`, `knn<K>`, `ridge`).
#[derive(Debug, Clone, PartialEq)]
pub enum ClassifierSpec {
    Forest(ForestConfig),
    Knn { neighbors: usize },
    Ridge { lambda: f64 },
}

impl Classifier for ClassifierSpec {
    fn fit(&self, x: &FeatureMatrix, y: &[usize]) -> Result<Box<dyn TrainedModel>, ClassifierError> {
        Ok(match self {
            ClassifierSpec::Forest(cfg) => Box::new(fit_forest(x, y, cfg)?),
            ClassifierSpec::Knn { neighbors } => Box::new(KnnModel::fit(x, y, *neighbors)?),
            ClassifierSpec::Ridge { lambda } => Box::new(RidgeModel::fit(x, y, *lambda)?),
        })
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierSpec::Forest(_) => f.write_str("rfc"),
            ClassifierSpec::Knn { neighbors } => write!(f, "knn{neighbors}"),
            ClassifierSpec::Ridge { .. } => f.write_str("ridge"),
        }
    }
}

impl FromStr for ClassifierSpec {
    type Err = String;

    /// Builds a classifier with default hyperparameters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "rfc" | "forest" | "rf" => Ok(ClassifierSpec::Forest(ForestConfig::default())),
            "ridge" | "rrc" => Ok(ClassifierSpec::Ridge {
                lambda: DEFAULT_RIDGE_LAMBDA,
            }),
            _ => {
                let digits = s
                    .strip_prefix("knn")
                    .or_else(|| s.strip_suffix("-nn"))
                    .or_else(|| s.strip_suffix("-nnc"))
                    .ok_or_else(|| format!("unknown classifier {s:?} (expected rfc, knn<K>, ridge)"))?;
                match digits.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(ClassifierSpec::Knn { neighbors: k }),
                    _ => Err(format!("bad neighbour count in {s:?}")),
                }
            }
        }
    }
}
