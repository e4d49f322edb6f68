//! Normalized Laplacian `L = I - D^{-1/2} A D^{-1/2}`, its spectrum, and the
//! zero-padded spectral-feature embedding built from it.
//!
//! The eigenvalues of `L` lie in `[0, 2]`; the multiplicity of 0 equals the
//! number of connected components and a connected graph is bipartite iff 2 is
//! an eigenvalue. The embedding keeps the `k` smallest eigenvalues after the
//! single zero of the largest connected component, so it does not depend on
//! node indexing.

mod eigen;
mod features;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use eigen::{
    eigenvalues_symmetric, tridiagonal_eigenvalues, tridiagonalize, Spectrum, SymTridiag,
    MAX_SWEEPS_PER_EIGENVALUE,
};
pub use features::{
    embed_dataset, embed_dataset_with, spectral_features, EmbeddedDataset, EmbeddingDim, SpectralEmbedding,
    SpectralFeatures, DEFAULT_NODE_CAP,
};

/// Slack allowed around the theoretical `[0, 2]` eigenvalue range.
pub const EIGEN_TOL: f64 = 1e-8;

/// Magnitude below which the smallest eigenvalue of a connected graph is
/// accepted as the structural zero.
pub const ZERO_EIGEN_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("node {node} has degree 0; the normalized Laplacian is undefined")]
    IsolatedNode { node: usize },
    #[error("eigenvalue iteration did not converge for a matrix of order {order}")]
    NoConvergence { order: usize },
    #[error("matrix has order 0")]
    EmptyMatrix,
    #[error("matrix data has length {len}, expected {order}x{order}")]
    BadShape { order: usize, len: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("embedding dimension must be at least 1")]
    ZeroDimension,
    #[error("largest component has {n_nodes} nodes, above the cap of {cap}")]
    TooLarge { n_nodes: usize, cap: usize },
    #[error("smallest eigenvalue of a connected graph is {value:e}, expected 0")]
    NonZeroGroundState { value: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    order: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    /// Checks shape and exact symmetry.
    pub fn from_row_major(order: usize, data: Vec<f64>) -> Result<Self, SpectralError> {
        if data.len() != order * order {
            return Err(SpectralError::BadShape {
                order,
                len: data.len(),
            });
        }
        for i in 0..order {
            for j in 0..i {
                if data[i * order + j] != data[j * order + i] {
                    return Err(SpectralError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(DenseSymmetric { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.order + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }
}

/// Builds `L = I - D^{-1/2} A D^{-1/2}` densely. Every node needs degree >= 1.
pub fn build_normalized_laplacian(g: &Graph) -> Result<DenseSymmetric, SpectralError> {
    let n = g.n_nodes();
    let inv_sqrt_deg = (0..n)
        .map(|u| match g.degree(u) {
            0 => Err(SpectralError::IsolatedNode { node: u }),
            d => Ok(1.0 / (d as f64).sqrt()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
    }
    for &(u, v) in g.edges() {
        let w = -(inv_sqrt_deg[u] * inv_sqrt_deg[v]);
        data[u * n + v] = w;
        data[v * n + u] = w;
    }
    Ok(DenseSymmetric { order: n, data })
}
