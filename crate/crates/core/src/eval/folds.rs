use rand::seq::SliceRandom;

use super::EvalError;
use crate::rng;

/// Assignment of every sample to one of `n_folds` test folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub n_folds: usize,
    pub assignments: Vec<usize>,
    pub seed: u64,
}

impl FoldPlan {
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] == fold).collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len()).filter(|&i| self.assignments[i] != fold).collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n_folds];
        for &f in &self.assignments {
            sizes[f] += 1;
        }
        sizes
    }

    /// `counts[fold][class]`
    pub fn class_counts(&self, labels: &[usize]) -> Vec<Vec<usize>> {
        let n_classes = labels.iter().max().map_or(0, |m| m + 1);
        let mut counts = vec![vec![0; n_classes]; self.n_folds];
        for (&f, &c) in self.assignments.iter().zip(labels) {
            counts[f][c] += 1;
        }
        counts
    }

    /// Fold sizes, and each class's per-fold counts, differ by at most one.
    pub fn is_balanced(&self, labels: &[usize]) -> bool {
        let spread = |v: &mut dyn Iterator<Item = usize>| {
            let (lo, hi) = v.fold((usize::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
            hi - lo <= 1
        };
        let counts = self.class_counts(labels);
        let n_classes = counts.first().map_or(0, Vec::len);
        spread(&mut self.fold_sizes().into_iter())
            && (0..n_classes).all(|c| spread(&mut counts.iter().map(|row| row[c])))
    }
}

/// Stratified k-fold assignment.
///
/// Each class's sample indices are shuffled by the seeded generator and dealt
/// round-robin over the folds. The dealing position carries over from one
/// class to the next (classes in index order), which keeps both the total
/// fold sizes and every class's per-fold counts within one of each other.
pub fn stratified_folds(labels: &[usize], n_folds: usize, seed: u64) -> Result<FoldPlan, EvalError> {
    if n_folds < 2 {
        return Err(EvalError::BadFoldCount(n_folds));
    }
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &c) in labels.iter().enumerate() {
        by_class[c].push(i);
    }
    for (class, members) in by_class.iter().enumerate() {
        if !members.is_empty() && members.len() < n_folds {
            return Err(EvalError::ClassTooSmall {
                class,
                count: members.len(),
                n_folds,
            });
        }
    }
    if labels.is_empty() {
        return Err(EvalError::ClassTooSmall {
            class: 0,
            count: 0,
            n_folds,
        });
    }

    let mut rng = rng::seeded(seed);
    let mut assignments = vec![0; labels.len()];
    let mut next = 0;
    for mut members in by_class {
        members.shuffle(&mut rng);
        for i in members {
            assignments[i] = next % n_folds;
            next += 1;
        }
    }
    Ok(FoldPlan {
        n_folds,
        assignments,
        seed,
    })
}
