//! Binary container for trained forests.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! "SGF1"  u32 version
//! u32 n_classes  u32 n_features  f64 x n_classes class weights
//! u32 n_trees  u32 min_samples_leaf  u64 max_depth  u8 bootstrap
//! u8 max_features kind (0 sqrt, 1 count, 2 all)  u32 max_features count  u64 seed
//! u32 tree count, then per tree:
//!   u32 node count, then per node:
//!     u8 0 (leaf)  f64 x n_classes
//!     u8 1 (split) u32 feature  f64 threshold  u32 left  u32 right
//! ```

use super::{ClassifierError, DecisionTree, ForestConfig, ForestModel, MaxFeatures, TreeNode};

pub const MODEL_MAGIC: &[u8; 4] = b"SGF1";
pub const MODEL_VERSION: u32 = 1;

fn u32_of(v: usize) -> [u8; 4] {
    u32::try_from(v).expect("value fits in u32").to_le_bytes()
}

pub fn encode_forest(m: &ForestModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MODEL_MAGIC);
    out.extend_from_slice(&MODEL_VERSION.to_le_bytes());
    out.extend_from_slice(&u32_of(m.n_classes));
    out.extend_from_slice(&u32_of(m.n_features));
    for w in &m.class_weights {
        out.extend_from_slice(&w.to_le_bytes());
    }
    let c = &m.config;
    out.extend_from_slice(&u32_of(c.n_trees));
    out.extend_from_slice(&u32_of(c.min_samples_leaf));
    out.extend_from_slice(&(c.max_depth as u64).to_le_bytes());
    out.push(u8::from(c.bootstrap));
    let (kind, count) = match c.max_features {
        MaxFeatures::Sqrt => (0u8, 0),
        MaxFeatures::Count(n) => (1, n),
        MaxFeatures::All => (2, 0),
    };
    out.push(kind);
    out.extend_from_slice(&u32_of(count));
    out.extend_from_slice(&c.seed.to_le_bytes());

    out.extend_from_slice(&u32_of(m.trees.len()));
    for t in &m.trees {
        out.extend_from_slice(&u32_of(t.nodes.len()));
        for node in &t.nodes {
            match node {
                TreeNode::Leaf { weights } => {
                    out.push(0);
                    for w in weights {
                        out.extend_from_slice(&w.to_le_bytes());
                    }
                }
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    out.push(1);
                    out.extend_from_slice(&u32_of(*feature));
                    out.extend_from_slice(&threshold.to_le_bytes());
                    out.extend_from_slice(&u32_of(*left));
                    out.extend_from_slice(&u32_of(*right));
                }
            }
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ClassifierError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| ClassifierError::Format(format!("truncated at byte {}", self.pos)))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, ClassifierError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<usize, ClassifierError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()) as usize)
    }

    fn u64(&mut self) -> Result<u64, ClassifierError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, ClassifierError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

fn bad(msg: impl Into<String>) -> ClassifierError {
    ClassifierError::Format(msg.into())
}

pub fn decode_forest(bytes: &[u8]) -> Result<ForestModel, ClassifierError> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4)? != MODEL_MAGIC {
        return Err(bad("bad magic bytes"));
    }
    let version = r.u32()?;
    if version != MODEL_VERSION as usize {
        return Err(bad(format!("unsupported version {version}")));
    }
    let n_classes = r.u32()?;
    let n_features = r.u32()?;
    if n_classes < 2 || n_features == 0 {
        return Err(bad("model needs >= 2 classes and >= 1 feature"));
    }
    let class_weights = (0..n_classes).map(|_| r.f64()).collect::<Result<Vec<_>, _>>()?;
    let n_trees = r.u32()?;
    let min_samples_leaf = r.u32()?;
    let max_depth = usize::try_from(r.u64()?).unwrap_or(usize::MAX);
    let bootstrap = match r.u8()? {
        0 => false,
        1 => true,
        b => return Err(bad(format!("bad bootstrap flag {b}"))),
    };
    let kind = r.u8()?;
    let count = r.u32()?;
    let max_features = match kind {
        0 => MaxFeatures::Sqrt,
        1 => MaxFeatures::Count(count),
        2 => MaxFeatures::All,
        k => return Err(bad(format!("bad max_features kind {k}"))),
    };
    let seed = r.u64()?;
    let config = ForestConfig {
        n_trees,
        min_samples_leaf,
        max_depth,
        bootstrap,
        max_features,
        seed,
    };

    let tree_count = r.u32()?;
    let mut trees = Vec::with_capacity(tree_count.min(1 << 16));
    for t in 0..tree_count {
        let n_nodes = r.u32()?;
        if n_nodes == 0 {
            return Err(bad(format!("tree {t} is empty")));
        }
        let mut nodes = Vec::with_capacity(n_nodes.min(1 << 20));
        for i in 0..n_nodes {
            let node = match r.u8()? {
                0 => {
                    let weights = (0..n_classes).map(|_| r.f64()).collect::<Result<Vec<_>, _>>()?;
                    if weights.iter().any(|w| !(*w >= 0.0)) {
                        return Err(bad(format!("tree {t} node {i}: negative leaf weight")));
                    }
                    TreeNode::Leaf { weights }
                }
                1 => {
                    let feature = r.u32()?;
                    let threshold = r.f64()?;
                    let left = r.u32()?;
                    let right = r.u32()?;
                    if feature >= n_features || !threshold.is_finite() {
                        return Err(bad(format!("tree {t} node {i}: bad split")));
                    }
                    // children come after their parent, so walks terminate
                    if left <= i || right <= i || left >= n_nodes || right >= n_nodes {
                        return Err(bad(format!("tree {t} node {i}: child index out of range")));
                    }
                    TreeNode::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    }
                }
                tag => return Err(bad(format!("tree {t} node {i}: unknown tag {tag}"))),
            };
            nodes.push(node);
        }
        trees.push(DecisionTree { nodes });
    }
    if r.pos != bytes.len() {
        return Err(bad("trailing bytes after last tree"));
    }
    Ok(ForestModel {
        trees,
        class_weights,
        n_classes,
        n_features,
        config,
    })
}
