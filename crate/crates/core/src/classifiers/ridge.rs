use nalgebra::{DMatrix, DVector};

use super::{argmax, check_training, ClassifierError};
use crate::matrix::FeatureMatrix;

pub const DEFAULT_RIDGE_LAMBDA: f64 = 1.0;

/// One-vs-rest ridge regression on mean-centred features.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeModel {
    /// `n_features x n_classes`
    pub weights: DMatrix<f64>,
    pub feature_means: DVector<f64>,
    /// Mean target per class; the intercept after centring.
    pub intercepts: DVector<f64>,
    pub lambda: f64,
}

impl RidgeModel {
    /// Solves `(Xc^T Xc + lambda I) W = Xc^T T` with targets in {-1, +1}.
    pub fn fit(x: &FeatureMatrix, y: &[usize], lambda: f64) -> Result<Self, ClassifierError> {
        check_training(x, y)?;
        if !(lambda > 0.0) {
            return Err(ClassifierError::InvalidConfig(format!("ridge lambda must be > 0, got {lambda}")));
        }
        let (n, d) = (x.n_rows(), x.n_cols());
        let n_classes = y.iter().max().unwrap() + 1;
        let raw = DMatrix::from_row_slice(n, d, x.as_slice());
        let feature_means = DVector::from_iterator(d, raw.column_iter().map(|c| c.mean()));
        let mut centred = raw;
        for (mut col, mean) in centred.column_iter_mut().zip(feature_means.iter()) {
            col.add_scalar_mut(-mean);
        }
        let targets = DMatrix::from_fn(n, n_classes, |i, c| if y[i] == c { 1.0 } else { -1.0 });
        let intercepts = DVector::from_iterator(n_classes, targets.column_iter().map(|c| c.mean()));

        let mut gram = centred.transpose() * &centred;
        for i in 0..d {
            gram[(i, i)] += lambda;
        }
        let rhs = centred.transpose() * targets;
        let chol = gram
            .cholesky()
            .ok_or_else(|| ClassifierError::InvalidConfig("ridge system is not positive definite".into()))?;
        Ok(RidgeModel {
            weights: chol.solve(&rhs),
            feature_means,
            intercepts,
            lambda,
        })
    }

    pub fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
        let d = self.feature_means.len();
        if x.n_cols() != d {
            return Err(ClassifierError::DimensionMismatch {
                expected: d,
                got: x.n_cols(),
            });
        }
        Ok(x.rows()
            .map(|row| {
                let centred = DVector::from_iterator(d, row.iter().zip(self.feature_means.iter()).map(|(v, m)| v - m));
                let scores = self.weights.tr_mul(&centred) + &self.intercepts;
                argmax(scores.as_slice())
            })
            .collect())
    }
}

pub fn fit_predict_ridge(
    train_x: &FeatureMatrix,
    train_y: &[usize],
    test_x: &FeatureMatrix,
    lambda: f64,
) -> Result<Vec<usize>, ClassifierError> {
    RidgeModel::fit(train_x, train_y, lambda)?.predict(test_x)
}
