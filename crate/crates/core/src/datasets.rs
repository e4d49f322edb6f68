//! The six benchmark datasets and the accuracies published for them.

/// Embedding widths of the published dimension sweep.
pub const SWEEP_KS: [usize; 5] = [1, 5, 10, 25, 50];

/// Allowed gap, in percentage points, between a reproduced and a published accuracy.
pub const TOLERANCE_POINTS: f64 = 3.0;

/// How a published average edge count was tallied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCount {
    /// Each undirected edge once.
    Undirected,
    /// Nonzeros of the adjacency matrix, i.e. each edge twice.
    AdjacencyEntries,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnownDataset {
    /// Archive name, e.g. `PROTEINS_full`.
    pub name: &'static str,
    /// Column label used in result tables.
    pub short: &'static str,
    pub aliases: &'static [&'static str],
    pub n_graphs: usize,
    pub n_classes: usize,
    /// Majority-class share, percent.
    pub bias: f64,
    pub avg_nodes: f64,
    /// Average edge count as published; see [`EdgeCount`].
    pub avg_edges: f64,
    pub edge_count: EdgeCount,
    pub rfc: f64,
    pub knn1: f64,
    pub knn15: f64,
    pub ridge: f64,
    /// Forest accuracy at each width of [`SWEEP_KS`].
    pub rfc_by_k: [f64; 5],
}

pub const KNOWN: [KnownDataset; 6] = [
    KnownDataset {
        name: "MUTAG",
        short: "MT",
        aliases: &["MT"],
        n_graphs: 188,
        n_classes: 2,
        bias: 66.5,
        avg_nodes: 18.0,
        avg_edges: 39.0,
        edge_count: EdgeCount::AdjacencyEntries,
        rfc: 88.4,
        knn1: 86.8,
        knn15: 85.7,
        ridge: 84.2,
        rfc_by_k: [76.2, 86.8, 86.8, 88.4, 88.4],
    },
    KnownDataset {
        name: "PTC_MR",
        short: "PTC",
        aliases: &["PTC"],
        n_graphs: 344,
        n_classes: 2,
        bias: 55.8,
        avg_nodes: 14.0,
        avg_edges: 15.0,
        edge_count: EdgeCount::Undirected,
        rfc: 62.8,
        knn1: 59.3,
        knn15: 61.9,
        ridge: 59.6,
        rfc_by_k: [56.1, 62.5, 61.4, 62.8, 62.8],
    },
    KnownDataset {
        name: "ENZYMES",
        short: "EZ",
        aliases: &["EZ"],
        n_graphs: 600,
        n_classes: 6,
        bias: 16.7,
        avg_nodes: 33.0,
        avg_edges: 124.0,
        edge_count: EdgeCount::AdjacencyEntries,
        rfc: 43.7,
        knn1: 37.3,
        knn15: 33.7,
        ridge: 26.7,
        rfc_by_k: [23.8, 39.0, 42.8, 42.7, 43.7],
    },
    KnownDataset {
        name: "PROTEINS_full",
        short: "PF",
        aliases: &["PF", "PROTEINS"],
        n_graphs: 1113,
        n_classes: 2,
        bias: 59.6,
        avg_nodes: 39.0,
        avg_edges: 146.0,
        edge_count: EdgeCount::AdjacencyEntries,
        rfc: 73.6,
        knn1: 65.6,
        knn15: 70.4,
        ridge: 71.5,
        rfc_by_k: [64.0, 69.6, 71.7, 72.8, 73.6],
    },
    KnownDataset {
        name: "DD",
        short: "DD",
        aliases: &[],
        n_graphs: 1178,
        n_classes: 2,
        bias: 58.7,
        avg_nodes: 284.0,
        avg_edges: 1431.0,
        edge_count: EdgeCount::AdjacencyEntries,
        rfc: 75.4,
        knn1: 69.6,
        knn15: 75.0,
        ridge: 75.0,
        rfc_by_k: [57.2, 73.9, 75.5, 75.7, 75.1],
    },
    KnownDataset {
        name: "NCI1",
        short: "NCI1",
        aliases: &[],
        n_graphs: 4110,
        n_classes: 2,
        bias: 50.0,
        avg_nodes: 30.0,
        avg_edges: 65.0,
        edge_count: EdgeCount::AdjacencyEntries,
        rfc: 75.2,
        knn1: 68.3,
        knn15: 69.6,
        ridge: 62.2,
        rfc_by_k: [58.2, 72.5, 75.5, 75.2, 75.2],
    },
];

/// Case-insensitive lookup by archive name or alias.
pub fn lookup(name: &str) -> Option<&'static KnownDataset> {
    KNOWN.iter().find(|d| {
        d.name.eq_ignore_ascii_case(name) || d.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    })
}

pub fn known_names() -> Vec<&'static str> {
    KNOWN.iter().map(|d| d.name).collect()
}

impl KnownDataset {
    /// The parsed dataset's average edge count, tallied the way the published figure was.
    pub fn comparable_avg_edges(&self, d: &crate::Dataset) -> f64 {
        match self.edge_count {
            EdgeCount::Undirected => d.avg_edges,
            EdgeCount::AdjacencyEntries => d.avg_adjacency_entries,
        }
    }

    /// Published forest accuracy at width `k`, if `k` was part of the sweep.
    pub fn rfc_at(&self, k: usize) -> Option<f64> {
        SWEEP_KS.iter().position(|&x| x == k).map(|i| self.rfc_by_k[i])
    }

    /// Published accuracy for a classifier name as printed by
    /// [`ClassifierSpec`](crate::classifiers::ClassifierSpec).
    pub fn accuracy_for(&self, classifier: &str) -> Option<f64> {
        match classifier {
            "rfc" => Some(self.rfc),
            "knn1" => Some(self.knn1),
            "knn15" => Some(self.knn15),
            "ridge" => Some(self.ridge),
            _ => None,
        }
    }
}

/// `true` when `got` lies within [`TOLERANCE_POINTS`] of `expected` (both percent).
pub fn within_tolerance(got: f64, expected: f64) -> bool {
    // printed values carry one decimal; absorb the binary representation error
    (got - expected).abs() <= TOLERANCE_POINTS + 1e-9
}
