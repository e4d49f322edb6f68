use rayon::prelude::*;

use super::{check_training, ClassifierError};
use crate::matrix::FeatureMatrix;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Stored training set for k-nearest-neighbour voting.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    train_x: FeatureMatrix,
    train_y: Vec<usize>,
    n_classes: usize,
    k_neighbors: usize,
}

impl KnnModel {
    pub fn fit(train_x: &FeatureMatrix, train_y: &[usize], k_neighbors: usize) -> Result<Self, ClassifierError> {
        check_training(train_x, train_y)?;
        if k_neighbors == 0 || k_neighbors > train_x.n_rows() {
            return Err(ClassifierError::InvalidConfig(format!(
                "k_neighbors = {k_neighbors} must lie in 1..={}",
                train_x.n_rows()
            )));
        }
        Ok(KnnModel {
            train_x: train_x.clone(),
            train_y: train_y.to_vec(),
            n_classes: train_y.iter().max().unwrap() + 1,
            k_neighbors,
        })
    }

    /// Majority vote among the `k` nearest training rows (Euclidean).
    ///
    /// Equal distances rank the lower training index first; equal votes go
    /// to the smaller class.
    pub fn predict(&self, test_x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
        if test_x.n_cols() != self.train_x.n_cols() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.train_x.n_cols(),
                got: test_x.n_cols(),
            });
        }
        Ok((0..test_x.n_rows())
            .into_par_iter()
            .map(|i| {
                let q = test_x.row(i);
                let mut ranked: Vec<(f64, usize)> = self
                    .train_x
                    .rows()
                    .enumerate()
                    .map(|(j, r)| (squared_distance(q, r), j))
                    .collect();
                ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut votes = vec![0usize; self.n_classes];
                for &(_, j) in &ranked[..self.k_neighbors] {
                    votes[self.train_y[j]] += 1;
                }
                let mut best = 0;
                for (c, &v) in votes.iter().enumerate() {
                    if v > votes[best] {
                        best = c;
                    }
                }
                best
            })
            .collect())
    }
}

pub fn fit_predict_knn(
    train_x: &FeatureMatrix,
    train_y: &[usize],
    test_x: &FeatureMatrix,
    k: usize,
) -> Result<Vec<usize>, ClassifierError> {
    KnnModel::fit(train_x, train_y, k)?.predict(test_x)
}
