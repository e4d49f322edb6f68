use std::time::{Duration, Instant};

use super::{EvalError, FoldPlan};
use crate::classifiers::Classifier;
use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub fold: usize,
    pub n_test: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub fit_time: Duration,
    pub predict_time: Duration,
}

/// Cross-validation outcome for one classifier on one embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub classifier: String,
    /// Embedding width the features were computed at.
    pub k: usize,
    pub folds: Vec<FoldResult>,
    pub mean: f64,
    /// Population standard deviation over folds.
    pub std: f64,
    /// Time spent embedding the dataset, shared by every fold.
    pub embed_time: Duration,
}

impl CvReport {
    pub fn per_fold_accuracy(&self) -> Vec<f64> {
        self.folds.iter().map(|f| f.accuracy).collect()
    }

    pub fn fit_time(&self) -> Duration {
        self.folds.iter().map(|f| f.fit_time).sum()
    }

    pub fn predict_time(&self) -> Duration {
        self.folds.iter().map(|f| f.predict_time).sum()
    }

    /// Mean accuracy in percent.
    pub fn mean_percent(&self) -> f64 {
        100.0 * self.mean
    }
}

/// Trains on the complement of each fold and scores on the fold, in fold order.
pub fn cross_validate(
    features: &FeatureMatrix,
    labels: &[usize],
    classifier: &dyn Classifier,
    plan: &FoldPlan,
) -> Result<CvReport, EvalError> {
    if features.n_rows() != labels.len() || plan.assignments.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            rows: features.n_rows(),
            labels: labels.len(),
            plan: plan.assignments.len(),
        });
    }
    let mut folds = Vec::with_capacity(plan.n_folds);
    for fold in 0..plan.n_folds {
        let test = plan.test_indices(fold);
        let train = plan.train_indices(fold);
        let train_x = features.select_rows(&train);
        let train_y: Vec<usize> = train.iter().map(|&i| labels[i]).collect();
        let test_x = features.select_rows(&test);

        let started = Instant::now();
        let model = classifier.fit(&train_x, &train_y)?;
        let fit_time = started.elapsed();
        let started = Instant::now();
        let predicted = model.predict(&test_x)?;
        let predict_time = started.elapsed();

        let correct = test.iter().zip(&predicted).filter(|(&i, &p)| labels[i] == p).count();
        folds.push(FoldResult {
            fold,
            n_test: test.len(),
            correct,
            accuracy: if test.is_empty() { 0.0 } else { correct as f64 / test.len() as f64 },
            fit_time,
            predict_time,
        });
    }
    let n = folds.len() as f64;
    let mean = folds.iter().map(|f| f.accuracy).sum::<f64>() / n;
    let std = (folds.iter().map(|f| (f.accuracy - mean).powi(2)).sum::<f64>() / n).sqrt();
    Ok(CvReport {
        classifier: classifier.name(),
        k: features.n_cols(),
        folds,
        mean,
        std,
        embed_time: Duration::ZERO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::{ClassifierError, TrainedModel};
    use crate::eval::stratified_folds;

    struct Constant(usize);
    impl TrainedModel for Constant {
        fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
            Ok(vec![self.0; x.n_rows()])
        }
    }
    impl Classifier for Constant {
        fn fit(&self, _: &FeatureMatrix, _: &[usize]) -> Result<Box<dyn TrainedModel>, ClassifierError> {
            Ok(Box::new(Constant(self.0)))
        }
        fn name(&self) -> String {
            "constant".into()
        }
    }

    /// Reads the label straight out of feature 0.
    struct Oracle;
    impl TrainedModel for Oracle {
        fn predict(&self, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
            Ok(x.rows().map(|r| r[0] as usize).collect())
        }
    }
    impl Classifier for Oracle {
        fn fit(&self, _: &FeatureMatrix, _: &[usize]) -> Result<Box<dyn TrainedModel>, ClassifierError> {
            Ok(Box::new(Oracle))
        }
        fn name(&self) -> String {
            "oracle".into()
        }
    }

    fn labelled(counts: &[usize]) -> (FeatureMatrix, Vec<usize>) {
        let labels: Vec<usize> = counts.iter().enumerate().flat_map(|(c, &n)| vec![c; n]).collect();
        let rows: Vec<[f64; 1]> = labels.iter().map(|&l| [l as f64]).collect();
        (FeatureMatrix::from_rows(&rows), labels)
    }

    #[test]
    fn constant_classifier_scores_the_bias() {
        // 125 / 188 = 66.5% majority, as in the mutagenicity data
        let (x, y) = labelled(&[125, 63]);
        let plan = stratified_folds(&y, 10, 1).unwrap();
        let r = cross_validate(&x, &y, &Constant(0), &plan).unwrap();
        assert!((r.mean - 125.0 / 188.0).abs() < 0.005, "{}", r.mean);
    }

    #[test]
    fn oracle_is_perfect() {
        let (x, y) = labelled(&[30, 20, 15]);
        let plan = stratified_folds(&y, 5, 7).unwrap();
        let r = cross_validate(&x, &y, &Oracle, &plan).unwrap();
        assert_eq!(r.mean, 1.0);
        assert_eq!(r.std, 0.0);
        assert_eq!(r.per_fold_accuracy(), vec![1.0; 5]);
        assert_eq!(r.classifier, "oracle");
    }

    #[test]
    fn mean_and_std_are_population_stats() {
        let (x, y) = labelled(&[10, 10]);
        let plan = stratified_folds(&y, 2, 1).unwrap();
        let r = cross_validate(&x, &y, &Constant(1), &plan).unwrap();
        let acc = r.per_fold_accuracy();
        let mean = acc.iter().sum::<f64>() / 2.0;
        assert_eq!(r.mean, mean);
        assert!(acc.iter().all(|a| (0.0..=1.0).contains(a)));
    }

    #[test]
    fn length_mismatch() {
        let (x, y) = labelled(&[10, 10]);
        let plan = stratified_folds(&y, 2, 1).unwrap();
        assert!(matches!(
            cross_validate(&x, &y[..5], &Oracle, &plan),
            Err(EvalError::LengthMismatch { .. })
        ));
    }
}
