use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use rayon::prelude::*;

use super::{argmax, balanced_class_weights, check_training, ClassifierError};
use crate::matrix::FeatureMatrix;
use crate::rng;

/// Features examined per split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxFeatures {
    /// `ceil(sqrt(d))`
    Sqrt,
    Count(usize),
    All,
}

impl MaxFeatures {
    pub fn resolve(self, n_features: usize) -> usize {
        let m = match self {
            MaxFeatures::Sqrt => (n_features as f64).sqrt().ceil() as usize,
            MaxFeatures::Count(m) => m,
            MaxFeatures::All => n_features,
        };
        m.clamp(1, n_features.max(1))
    }
}

impl fmt::Display for MaxFeatures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxFeatures::Sqrt => f.write_str("sqrt"),
            MaxFeatures::Count(m) => write!(f, "{m}"),
            MaxFeatures::All => f.write_str("all"),
        }
    }
}

impl FromStr for MaxFeatures {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sqrt" => Ok(MaxFeatures::Sqrt),
            "all" => Ok(MaxFeatures::All),
            other => other
                .parse::<usize>()
                .ok()
                .filter(|&m| m >= 1)
                .map(MaxFeatures::Count)
                .ok_or_else(|| format!("max_features must be sqrt, all, or a positive integer, got {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForestConfig {
    pub n_trees: usize,
    pub min_samples_leaf: usize,
    /// `usize::MAX` for unlimited depth.
    pub max_depth: usize,
    pub bootstrap: bool,
    pub max_features: MaxFeatures,
    pub seed: u64,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            n_trees: 500,
            min_samples_leaf: 1,
            max_depth: 100,
            bootstrap: true,
            max_features: MaxFeatures::Sqrt,
            seed: 1,
        }
    }
}

impl ForestConfig {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        let bad = |what: &str| Err(ClassifierError::InvalidConfig(format!("{what} must be at least 1")));
        if self.n_trees == 0 {
            return bad("n_trees");
        }
        if self.max_depth == 0 {
            return bad("max_depth");
        }
        if self.min_samples_leaf == 0 {
            return bad("min_samples_leaf");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    /// Rows with `x[feature] <= threshold` go to `left`.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    /// Class-weighted sample counts that reached this leaf.
    Leaf { weights: Vec<f64> },
}

/// Binary tree stored as a node array; node 0 is the root.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub nodes: Vec<TreeNode>,
}

impl DecisionTree {
    pub fn leaf_for(&self, row: &[f64]) -> &[f64] {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if row[*feature] <= *threshold { *left } else { *right },
                TreeNode::Leaf { weights } => return weights,
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(t: &DecisionTree, at: usize) -> usize {
            match &t.nodes[at] {
                TreeNode::Split { left, right, .. } => 1 + walk(t, *left).max(walk(t, *right)),
                TreeNode::Leaf { .. } => 0,
            }
        }
        walk(self, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForestModel {
    pub trees: Vec<DecisionTree>,
    pub class_weights: Vec<f64>,
    pub n_classes: usize,
    pub n_features: usize,
    pub config: ForestConfig,
}

struct TreeBuilder<'a> {
    x: &'a FeatureMatrix,
    y: &'a [usize],
    class_weights: &'a [f64],
    cfg: &'a ForestConfig,
    n_classes: usize,
    max_features: usize,
    rng: rng::Rng,
    nodes: Vec<TreeNode>,
    order: Vec<usize>,
    features: Vec<usize>,
}

/// Total weight times Gini impurity: `W - sum(c^2) / W`.
pub(crate) fn impurity_mass(counts: &[f64]) -> f64 {
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    total - counts.iter().map(|c| c * c).sum::<f64>() / total
}

struct BestSplit {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl TreeBuilder<'_> {
    fn class_totals(&self, rows: &[usize]) -> Vec<f64> {
        let mut w = vec![0.0; self.n_classes];
        for &r in rows {
            w[self.y[r]] += self.class_weights[self.y[r]];
        }
        w
    }

    fn grow(&mut self, rows: &mut [usize], depth: usize) -> usize {
        let totals = self.class_totals(rows);
        let id = self.nodes.len();
        self.nodes.push(TreeNode::Leaf { weights: totals.clone() });

        let pure = totals.iter().filter(|&&w| w > 0.0).count() <= 1;
        if depth >= self.cfg.max_depth || pure || rows.len() < 2 * self.cfg.min_samples_leaf {
            return id;
        }
        let Some(best) = self.best_split(rows, &totals) else {
            return id;
        };
        // stable partition keeps row order deterministic
        let (left, right): (Vec<usize>, Vec<usize>) =
            rows.iter().partition(|&&r| self.x.get(r, best.feature) <= best.threshold);
        let split_at = left.len();
        rows[..split_at].copy_from_slice(&left);
        rows[split_at..].copy_from_slice(&right);
        let (l_rows, r_rows) = rows.split_at_mut(split_at);
        let left_id = self.grow(l_rows, depth + 1);
        let right_id = self.grow(r_rows, depth + 1);
        self.nodes[id] = TreeNode::Split {
            feature: best.feature,
            threshold: best.threshold,
            left: left_id,
            right: right_id,
        };
        id
    }

    /// Scans features in a random order until `max_features` non-constant
    /// ones have been evaluated, returning the largest weighted Gini decrease.
    fn best_split(&mut self, rows: &[usize], totals: &[f64]) -> Option<BestSplit> {
        let n_features = self.x.n_cols();
        let parent_weight: f64 = totals.iter().sum();
        if parent_weight <= 0.0 {
            return None;
        }
        let parent_impurity = impurity_mass(totals);
        let min_gain = 1e-12 * parent_weight;
        let min_leaf = self.cfg.min_samples_leaf;

        self.features.clear();
        self.features.extend(0..n_features);
        let mut best: Option<BestSplit> = None;
        let mut visited_informative = 0;
        let mut left = vec![0.0; self.n_classes];
        let mut right = vec![0.0; self.n_classes];

        for drawn in 0..n_features {
            if visited_informative >= self.max_features {
                break;
            }
            let pick = self.rng.gen_range(drawn..n_features);
            self.features.swap(drawn, pick);
            let f = self.features[drawn];

            self.order.clear();
            self.order.extend_from_slice(rows);
            let x = self.x;
            self.order.sort_by(|&a, &b| x.get(a, f).total_cmp(&x.get(b, f)));
            let lo = x.get(self.order[0], f);
            let hi = x.get(self.order[self.order.len() - 1], f);
            if lo == hi {
                continue;
            }
            visited_informative += 1;

            left.iter_mut().for_each(|w| *w = 0.0);
            for i in 1..self.order.len() {
                let prev = self.order[i - 1];
                let c = self.y[prev];
                left[c] += self.class_weights[c];
                let a = x.get(prev, f);
                let b = x.get(self.order[i], f);
                if a == b || i < min_leaf || self.order.len() - i < min_leaf {
                    continue;
                }
                for (r, (t, l)) in right.iter_mut().zip(totals.iter().zip(&left)) {
                    *r = (t - l).max(0.0);
                }
                let gain = parent_impurity - impurity_mass(&left) - impurity_mass(&right);
                if gain > min_gain && best.as_ref().is_none_or(|s| gain > s.gain) {
                    let mut threshold = 0.5 * (a + b);
                    if threshold >= b || !threshold.is_finite() {
                        threshold = a;
                    }
                    best = Some(BestSplit {
                        feature: f,
                        threshold,
                        gain,
                    });
                }
            }
        }
        best
    }
}

fn fit_tree(
    x: &FeatureMatrix,
    y: &[usize],
    class_weights: &[f64],
    cfg: &ForestConfig,
    tree_index: usize,
) -> DecisionTree {
    let mut rng = rng::stream(cfg.seed, tree_index as u64);
    let n = x.n_rows();
    let mut rows: Vec<usize> = if cfg.bootstrap {
        let mut r: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        r.sort_unstable();
        r
    } else {
        (0..n).collect()
    };
    let mut builder = TreeBuilder {
        x,
        y,
        class_weights,
        cfg,
        n_classes: class_weights.len(),
        max_features: cfg.max_features.resolve(x.n_cols()),
        rng,
        nodes: Vec::new(),
        order: Vec::with_capacity(n),
        features: Vec::with_capacity(x.n_cols()),
    };
    builder.grow(&mut rows, 0);
    DecisionTree { nodes: builder.nodes }
}

/// Trains a class-balanced random forest. Trees are grown in parallel on the
/// current rayon pool; tree `t` only depends on `(cfg.seed, t)`.
pub fn fit_forest(x: &FeatureMatrix, y: &[usize], cfg: &ForestConfig) -> Result<ForestModel, ClassifierError> {
    cfg.validate()?;
    check_training(x, y)?;
    let class_weights = balanced_class_weights(y)?;
    if class_weights.len() < 2 {
        return Err(ClassifierError::SingleClass);
    }
    let trees = (0..cfg.n_trees)
        .into_par_iter()
        .map(|t| fit_tree(x, y, &class_weights, cfg, t))
        .collect();
    Ok(ForestModel {
        trees,
        n_classes: class_weights.len(),
        class_weights,
        n_features: x.n_cols(),
        config: cfg.clone(),
    })
}

/// Sums leaf weight vectors over all trees; ties go to the smaller class.
pub fn predict_forest(m: &ForestModel, x: &FeatureMatrix) -> Result<Vec<usize>, ClassifierError> {
    if x.n_cols() != m.n_features {
        return Err(ClassifierError::DimensionMismatch {
            expected: m.n_features,
            got: x.n_cols(),
        });
    }
    Ok(x.rows()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|row| {
            let mut votes = vec![0.0; m.n_classes];
            for t in &m.trees {
                for (v, w) in votes.iter_mut().zip(t.leaf_for(row)) {
                    *v += w;
                }
            }
            argmax(&votes)
        })
        .collect())
}
