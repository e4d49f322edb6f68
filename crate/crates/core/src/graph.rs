//! Simple undirected graphs in CSR form and connected-component analysis.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a node outside 0..{n_nodes}")]
    NodeOutOfRange { u: usize, v: usize, n_nodes: usize },
    #[error("graph has no nodes")]
    Empty,
}

/// Counts of input edges discarded while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeListStats {
    pub self_loops: usize,
    /// Repeated pairs, including the mirrored direction of an undirected edge.
    pub duplicates: usize,
}

/// Immutable undirected, unweighted graph without self-loops or multi-edges.
///
/// Both directions of every edge are stored in the CSR arrays, so the
/// neighbours of a node are a contiguous, ascending slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from raw node-id pairs. Self-loops are dropped and
    /// mirrored or repeated pairs collapse into a single undirected edge.
    pub fn from_edge_list(n_nodes: usize, raw_edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edge_list_with_stats(n_nodes, raw_edges).map(|(g, _)| g)
    }

    pub fn from_edge_list_with_stats(
        n_nodes: usize,
        raw_edges: &[(usize, usize)],
    ) -> Result<(Self, EdgeListStats), GraphError> {
        let mut stats = EdgeListStats::default();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(u, v) in raw_edges {
            if u >= n_nodes || v >= n_nodes {
                return Err(GraphError::NodeOutOfRange { u, v, n_nodes });
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        stats.duplicates = before - edges.len();

        let mut degree = vec![0usize; n_nodes];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n_nodes + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n_nodes].to_vec();
        let mut targets = vec![0usize; offsets[n_nodes]];
        for &(u, v) in &edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for u in 0..n_nodes {
            targets[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Ok((
            Graph {
                n_nodes,
                edges,
                offsets,
                targets,
            },
            stats,
        ))
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n_nodes && v < self.n_nodes && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// CSR row offsets (length `n_nodes + 1`) and column indices.
    pub fn csr(&self) -> (&[usize], &[usize]) {
        (&self.offsets, &self.targets)
    }

    /// Relabels node `u` as `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, GraphError> {
        assert_eq!(perm.len(), self.n_nodes, "permutation length must equal node count");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n_nodes, &edges)
    }

    /// Subgraph induced by `nodes` (ascending original ids), re-indexed 0..m.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.n_nodes];
        for (new, &old) in nodes.iter().enumerate() {
            index[old] = new;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edge_list(nodes.len(), &edges).expect("induced edges are in range")
    }
}

/// Component id per node, ids ordered by smallest contained node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component_id: Vec<usize>,
    pub n_components: usize,
    pub component_sizes: Vec<usize>,
}

pub fn connected_components(g: &Graph) -> ComponentLabeling {
    let n = g.n_nodes();
    let mut component_id = vec![usize::MAX; n];
    let mut component_sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component_id[start] != usize::MAX {
            continue;
        }
        let id = component_sizes.len();
        let mut size = 0;
        component_id[start] = id;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                if component_id[v] == usize::MAX {
                    component_id[v] = id;
                    queue.push_back(v);
                }
            }
        }
        component_sizes.push(size);
    }
    ComponentLabeling {
        component_id,
        n_components: component_sizes.len(),
        component_sizes,
    }
}

/// Induced subgraph on the largest connected component.
///
/// Ties go to the component holding the smallest node id. Nodes keep their
/// relative order.
pub fn largest_connected_component(g: &Graph) -> Result<Graph, GraphError> {
    if g.n_nodes() == 0 {
        return Err(GraphError::Empty);
    }
    let labels = connected_components(g);
    if labels.n_components == 1 {
        return Ok(g.clone());
    }
    // max_by_key keeps the last maximum; scan manually so the first (smallest id) wins.
    let mut best = 0;
    for (id, &size) in labels.component_sizes.iter().enumerate() {
        if size > labels.component_sizes[best] {
            best = id;
        }
    }
    let nodes: Vec<usize> = (0..g.n_nodes())
        .filter(|&u| labels.component_id[u] == best)
        .collect();
    Ok(g.induced_subgraph(&nodes))
}
