//! Graph classification from the ordered spectrum of the normalized Laplacian.

pub mod classifiers;
pub mod cli;
pub mod config;
pub mod datasets;
pub mod eval;
pub mod fetch;
pub mod graph;
pub mod matrix;
pub mod rng;
pub mod spectral;
pub mod tu;

pub use graph::{connected_components, largest_connected_component, ComponentLabeling, Graph, GraphError};
pub use matrix::FeatureMatrix;
pub use spectral::{spectral_features, EmbeddingDim, SpectralEmbedding};
pub use tu::{class_bias, parse_tu_dataset, Dataset, IngestError};
