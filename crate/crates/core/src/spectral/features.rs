use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{build_normalized_laplacian, eigenvalues_symmetric, SpectralError, EIGEN_TOL, ZERO_EIGEN_TOL};
use crate::graph::{largest_connected_component, Graph};
use crate::matrix::FeatureMatrix;
use crate::tu::Dataset;

/// Largest component size embedded before refusing (dense storage is n^2).
pub const DEFAULT_NODE_CAP: usize = 20_000;

/// Fixed-width vector of the smallest positive Laplacian eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEmbedding {
    pub values: Vec<f64>,
    /// Node count of the largest connected component that was embedded.
    pub source_nodes: usize,
}

impl SpectralEmbedding {
    /// Number of entries that come from the spectrum rather than padding.
    pub fn n_informative(&self) -> usize {
        self.source_nodes.saturating_sub(1).min(self.values.len())
    }
}

/// Embedding width: fixed, or the dataset's average node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingDim {
    Auto,
    Fixed(usize),
}

impl EmbeddingDim {
    pub fn resolve(self, d: &Dataset) -> usize {
        match self {
            EmbeddingDim::Auto => d.auto_dimension(),
            EmbeddingDim::Fixed(k) => k,
        }
    }
}

impl fmt::Display for EmbeddingDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingDim::Auto => f.write_str("auto"),
            EmbeddingDim::Fixed(k) => write!(f, "{k}"),
        }
    }
}

impl FromStr for EmbeddingDim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "auto" => Ok(EmbeddingDim::Auto),
            other => match other.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("expected \"auto\" or a positive integer, got {other:?}")),
                Ok(k) => Ok(EmbeddingDim::Fixed(k)),
            },
        }
    }
}

/// Spectral feature extractor with a fixed width and a node cap.
#[derive(Debug, Clone, Copy)]
pub struct SpectralFeatures {
    k: usize,
    node_cap: usize,
}

impl SpectralFeatures {
    pub fn new(k: usize) -> Result<Self, SpectralError> {
        if k == 0 {
            return Err(SpectralError::ZeroDimension);
        }
        Ok(SpectralFeatures {
            k,
            node_cap: DEFAULT_NODE_CAP,
        })
    }

    pub fn with_node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn embed(&self, g: &Graph) -> Result<SpectralEmbedding, SpectralError> {
        let lcc = largest_connected_component(g)?;
        let n = lcc.n_nodes();
        if n > self.node_cap {
            return Err(SpectralError::TooLarge {
                n_nodes: n,
                cap: self.node_cap,
            });
        }
        let mut values = vec![0.0; self.k];
        if n == 1 {
            return Ok(SpectralEmbedding { values, source_nodes: 1 });
        }
        let spectrum = eigenvalues_symmetric(&build_normalized_laplacian(&lcc)?)?;
        let eig = spectrum.eigenvalues();
        if eig[0].abs() >= ZERO_EIGEN_TOL {
            return Err(SpectralError::NonZeroGroundState { value: eig[0] });
        }
        for (slot, &x) in values.iter_mut().zip(&eig[1..]) {
            // clamp rounding overshoot past 2 only; larger excursions stay visible
            *slot = if x > 2.0 && x - 2.0 < EIGEN_TOL { 2.0 } else { x.max(0.0) };
        }
        Ok(SpectralEmbedding { values, source_nodes: n })
    }
}

/// `k` smallest positive normalized-Laplacian eigenvalues of the largest
/// connected component of `g`, right-padded with zeros.
pub fn spectral_features(g: &Graph, k: usize) -> Result<SpectralEmbedding, SpectralError> {
    SpectralFeatures::new(k)?.embed(g)
}

/// One embedding row per graph, in dataset order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedDataset {
    pub k: usize,
    pub features: FeatureMatrix,
    pub labels: Vec<usize>,
}

/// Embeds every graph of `d` in parallel on the current rayon pool.
pub fn embed_dataset(d: &Dataset, dim: EmbeddingDim) -> Result<EmbeddedDataset, SpectralError> {
    let extractor = SpectralFeatures::new(dim.resolve(d))?;
    embed_dataset_with(d, &extractor)
}

pub fn embed_dataset_with(d: &Dataset, extractor: &SpectralFeatures) -> Result<EmbeddedDataset, SpectralError> {
    let rows = d
        .graphs
        .par_iter()
        .map(|g| extractor.embed(g).map(|e| e.values))
        .collect::<Result<Vec<_>, _>>()?;
    let mut features = FeatureMatrix::from_rows(&rows);
    if rows.is_empty() {
        features = FeatureMatrix::new(0, extractor.k(), Vec::new()).expect("empty shape");
    }
    Ok(EmbeddedDataset {
        k: extractor.k(),
        features,
        labels: d.labels.clone(),
    })
}
