use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::{cross_validate, CvReport, EvalError, FoldPlan};
use crate::classifiers::{Classifier, ClassifierSpec, ForestConfig};
use crate::matrix::FeatureMatrix;
use crate::spectral::{embed_dataset, EmbeddingDim};
use crate::tu::Dataset;

/// Cross-validates `classifier` at every embedding width in `ks`.
///
/// The dataset is embedded once at the largest width; narrower embeddings
/// are prefixes of it. The same fold plan serves every width.
pub fn sweep_embedding_dim(
    dataset: &Dataset,
    ks: &[usize],
    classifier: &dyn Classifier,
    plan: &FoldPlan,
) -> Result<Vec<CvReport>, EvalError> {
    let k_max = ks.iter().copied().max().filter(|_| !ks.contains(&0)).ok_or(EvalError::BadDimensions)?;
    let started = Instant::now();
    let full = embed_dataset(dataset, EmbeddingDim::Fixed(k_max))?;
    let embed_time = started.elapsed();
    ks.iter()
        .map(|&k| {
            let features = full.features.truncate_cols(k);
            let mut report = cross_validate(&features, &full.labels, classifier, plan)?;
            report.embed_time = embed_time;
            Ok(report)
        })
        .collect()
}

/// Forest hyperparameters that can be swept one at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperParam {
    NTrees,
    MinSamplesLeaf,
    MaxDepth,
    Bootstrap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpValue {
    Count(usize),
    Flag(bool),
}

impl fmt::Display for HpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HpValue::Count(n) => write!(f, "{n}"),
            HpValue::Flag(b) => write!(f, "{b}"),
        }
    }
}

impl HyperParam {
    pub const ALL: [HyperParam; 4] = [
        HyperParam::NTrees,
        HyperParam::MinSamplesLeaf,
        HyperParam::MaxDepth,
        HyperParam::Bootstrap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HyperParam::NTrees => "n_trees",
            HyperParam::MinSamplesLeaf => "min_samples_leaf",
            HyperParam::MaxDepth => "max_depth",
            HyperParam::Bootstrap => "bootstrap",
        }
    }

    pub fn parse_value(self, s: &str) -> Result<HpValue, EvalError> {
        let bad = || EvalError::BadValue {
            param: self.name().into(),
            value: s.into(),
        };
        match self {
            HyperParam::Bootstrap => match s.trim().to_ascii_lowercase().as_str() {
                "true" | "1" => Ok(HpValue::Flag(true)),
                "false" | "0" => Ok(HpValue::Flag(false)),
                _ => Err(bad()),
            },
            _ => match s.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(HpValue::Count(n)),
                _ => Err(bad()),
            },
        }
    }

    /// `base` with this parameter replaced by `value`.
    pub fn apply(self, base: &ForestConfig, value: HpValue) -> Result<ForestConfig, EvalError> {
        let mut cfg = base.clone();
        match (self, value) {
            (HyperParam::NTrees, HpValue::Count(n)) => cfg.n_trees = n,
            (HyperParam::MinSamplesLeaf, HpValue::Count(n)) => cfg.min_samples_leaf = n,
            (HyperParam::MaxDepth, HpValue::Count(n)) => cfg.max_depth = n,
            (HyperParam::Bootstrap, HpValue::Flag(b)) => cfg.bootstrap = b,
            _ => {
                return Err(EvalError::BadValue {
                    param: self.name().into(),
                    value: value.to_string(),
                })
            }
        }
        Ok(cfg)
    }
}

impl fmt::Display for HyperParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HyperParam {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "n_trees" | "n_estimators" => Ok(HyperParam::NTrees),
            "min_samples_leaf" => Ok(HyperParam::MinSamplesLeaf),
            "max_depth" => Ok(HyperParam::MaxDepth),
            "bootstrap" => Ok(HyperParam::Bootstrap),
            other => Err(EvalError::UnknownParam(other.into())),
        }
    }
}

/// The forest hyperparameter grid used for the robustness study.
pub fn paper_grid() -> Vec<(HyperParam, Vec<HpValue>)> {
    let counts = |v: &[usize]| v.iter().map(|&n| HpValue::Count(n)).collect();
    vec![
        (HyperParam::NTrees, counts(&[1, 10, 50, 100, 250, 500, 750, 1000])),
        (HyperParam::MinSamplesLeaf, counts(&[1, 2, 3, 4, 5, 6])),
        (HyperParam::MaxDepth, counts(&[1, 5, 10, 50, 100, 250, 500, 750, 1000])),
        (HyperParam::Bootstrap, vec![HpValue::Flag(true), HpValue::Flag(false)]),
    ]
}

/// One fold's accuracy at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct HpRecord {
    pub param: HyperParam,
    pub value: HpValue,
    pub fold: usize,
    pub accuracy: f64,
}

/// Varies one forest parameter at a time around `base`, cross-validating
/// each grid point on the same folds.
pub fn sweep_hyperparameters(
    features: &FeatureMatrix,
    labels: &[usize],
    grid: &[(HyperParam, Vec<HpValue>)],
    base: &ForestConfig,
    plan: &FoldPlan,
) -> Result<Vec<HpRecord>, EvalError> {
    let mut records = Vec::new();
    for (param, values) in grid {
        for &value in values {
            let cfg = param.apply(base, value)?;
            let report = cross_validate(features, labels, &ClassifierSpec::Forest(cfg), plan)?;
            records.extend(report.folds.iter().map(|f| HpRecord {
                param: *param,
                value,
                fold: f.fold,
                accuracy: f.accuracy,
            }));
        }
    }
    Ok(records)
}
