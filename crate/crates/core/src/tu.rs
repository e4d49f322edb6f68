//! Reader and writer for the multi-file TU graph dataset format.
//!
//! A dataset `DS` is a directory holding
//!
//! * `DS_A.txt`: one `i, j` line per adjacency entry, 1-indexed global node ids,
//! * `DS_graph_indicator.txt`: line `t` is the 1-indexed graph id of node `t`,
//! * `DS_graph_labels.txt`: line `g` is the raw class label of graph `g`.
//!
//! Node and edge label sidecar files are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("missing dataset file {0}")]
    MissingFile(PathBuf),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}:{line}: {message}")]
    Parse {
        file: PathBuf,
        line: usize,
        message: String,
    },
    #[error("graph {graph_id} has no nodes")]
    EmptyGraph { graph_id: usize },
    #[error("dataset has no graphs")]
    NoGraphs,
    #[error("graph {graph_id}: {source}")]
    Graph {
        graph_id: usize,
        #[source]
        source: GraphError,
    },
}

/// Labelled collection of graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub graphs: Vec<Graph>,
    /// Class index per graph, `0..n_classes`.
    pub labels: Vec<usize>,
    pub n_classes: usize,
    /// Raw label to class index, ascending by raw value.
    pub raw_label_map: BTreeMap<i64, usize>,
    /// Mean node count over the graphs as given (before any component extraction).
    pub avg_nodes: f64,
    /// Mean undirected edge count.
    pub avg_edges: f64,
    /// Mean number of nonzeros of the adjacency matrix (twice `avg_edges`).
    pub avg_adjacency_entries: f64,
}

impl Dataset {
    /// Remaps raw labels to `0..n_classes` by ascending raw value.
    pub fn new(name: impl Into<String>, graphs: Vec<Graph>, raw_labels: &[i64]) -> Result<Self, IngestError> {
        assert_eq!(graphs.len(), raw_labels.len(), "one label per graph");
        if graphs.is_empty() {
            return Err(IngestError::NoGraphs);
        }
        let mut raw_label_map: BTreeMap<i64, usize> = raw_labels.iter().map(|&r| (r, 0)).collect();
        for (idx, v) in raw_label_map.values_mut().enumerate() {
            *v = idx;
        }
        let labels = raw_labels.iter().map(|r| raw_label_map[r]).collect();
        let count = graphs.len() as f64;
        let avg_nodes = graphs.iter().map(|g| g.n_nodes() as f64).sum::<f64>() / count;
        let avg_edges = graphs.iter().map(|g| g.n_edges() as f64).sum::<f64>() / count;
        Ok(Dataset {
            name: name.into(),
            n_classes: raw_label_map.len(),
            graphs,
            labels,
            raw_label_map,
            avg_nodes,
            avg_edges,
            avg_adjacency_entries: 2.0 * avg_edges,
        })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Graph count per class index.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Raw label for a class index.
    pub fn raw_label(&self, class: usize) -> Option<i64> {
        self.raw_label_map
            .iter()
            .find_map(|(&raw, &idx)| (idx == class).then_some(raw))
    }

    /// Average node count rounded half-up, never below 1.
    pub fn auto_dimension(&self) -> usize {
        ((self.avg_nodes + 0.5).floor() as usize).max(1)
    }
}

/// Share of the most frequent class, in percent.
pub fn class_bias(d: &Dataset) -> f64 {
    let max = d.class_counts().into_iter().max().unwrap_or(0);
    100.0 * max as f64 / d.len() as f64
}

fn dataset_file(dir: &Path, name: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{name}_{suffix}.txt"))
}

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>, IngestError> {
    let text = fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            IngestError::MissingFile(path.to_path_buf())
        } else {
            IngestError::Io {
                path: path.to_path_buf(),
                source: e,
            }
        }
    })?;
    let mut lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_owned()))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    Ok(lines)
}

fn parse_int<T: std::str::FromStr>(token: &str, file: &Path, line: usize) -> Result<T, IngestError> {
    token.trim().parse().map_err(|_| IngestError::Parse {
        file: file.to_path_buf(),
        line,
        message: format!("expected an integer, found {:?}", token.trim()),
    })
}

/// Reads `<dir>/<name>_*.txt` into a [`Dataset`].
pub fn parse_tu_dataset(dir: impl AsRef<Path>, name: &str) -> Result<Dataset, IngestError> {
    let dir = dir.as_ref();
    let a_path = dataset_file(dir, name, "A");
    let ind_path = dataset_file(dir, name, "graph_indicator");
    let lab_path = dataset_file(dir, name, "graph_labels");
    for p in [&a_path, &ind_path, &lab_path] {
        if !p.is_file() {
            return Err(IngestError::MissingFile(p.clone()));
        }
    }

    let mut raw_labels = Vec::new();
    for (line, text) in read_lines(&lab_path)? {
        raw_labels.push(parse_int::<i64>(&text, &lab_path, line)?);
    }
    let n_graphs = raw_labels.len();
    if n_graphs == 0 {
        return Err(IngestError::NoGraphs);
    }

    // global node -> (graph index, local index)
    let mut node_home = Vec::new();
    let mut graph_sizes = vec![0usize; n_graphs];
    for (line, text) in read_lines(&ind_path)? {
        let gid: usize = parse_int(&text, &ind_path, line)?;
        if gid == 0 || gid > n_graphs {
            return Err(IngestError::Parse {
                file: ind_path.clone(),
                line,
                message: format!("graph id {gid} outside 1..={n_graphs}"),
            });
        }
        node_home.push((gid - 1, graph_sizes[gid - 1]));
        graph_sizes[gid - 1] += 1;
    }

    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_graphs];
    for (line, text) in read_lines(&a_path)? {
        if text.is_empty() {
            continue;
        }
        let (left, right) = text.split_once(',').ok_or_else(|| IngestError::Parse {
            file: a_path.clone(),
            line,
            message: format!("expected \"i, j\", found {text:?}"),
        })?;
        let i: usize = parse_int(left, &a_path, line)?;
        let j: usize = parse_int(right, &a_path, line)?;
        let lookup = |node: usize| {
            node.checked_sub(1)
                .and_then(|t| node_home.get(t))
                .copied()
                .ok_or_else(|| IngestError::Parse {
                    file: a_path.clone(),
                    line,
                    message: format!("node {node} has no graph indicator entry"),
                })
        };
        let (gi, li) = lookup(i)?;
        let (gj, lj) = lookup(j)?;
        if gi != gj {
            return Err(IngestError::Parse {
                file: a_path.clone(),
                line,
                message: format!("edge ({i}, {j}) joins graph {} and graph {}", gi + 1, gj + 1),
            });
        }
        edges[gi].push((li, lj));
    }

    let mut graphs = Vec::with_capacity(n_graphs);
    let mut self_loops = 0;
    for (g, (size, edge_list)) in graph_sizes.iter().zip(&edges).enumerate() {
        if *size == 0 {
            return Err(IngestError::EmptyGraph { graph_id: g + 1 });
        }
        let (graph, stats) = Graph::from_edge_list_with_stats(*size, edge_list)
            .map_err(|source| IngestError::Graph { graph_id: g + 1, source })?;
        self_loops += stats.self_loops;
        graphs.push(graph);
    }
    if self_loops > 0 {
        log::warn!("{name}: dropped {self_loops} self-loop entries");
    }
    Dataset::new(name, graphs, &raw_labels)
}

/// Writes `d` in TU format under `dir`, listing every edge in both directions.
pub fn write_tu_dataset(d: &Dataset, dir: impl AsRef<Path>) -> Result<(), IngestError> {
    let dir = dir.as_ref();
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| IngestError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;

    let mut a = Vec::new();
    let mut indicator = Vec::new();
    let mut offset = 0;
    for (g, graph) in d.graphs.iter().enumerate() {
        for &(u, v) in graph.edges() {
            writeln!(a, "{}, {}", u + offset + 1, v + offset + 1).unwrap();
            writeln!(a, "{}, {}", v + offset + 1, u + offset + 1).unwrap();
        }
        for _ in 0..graph.n_nodes() {
            writeln!(indicator, "{}", g + 1).unwrap();
        }
        offset += graph.n_nodes();
    }
    let mut labels = Vec::new();
    for &l in &d.labels {
        writeln!(labels, "{}", d.raw_label(l).expect("label in map")).unwrap();
    }
    for (suffix, bytes) in [("A", a), ("graph_indicator", indicator), ("graph_labels", labels)] {
        let path = dataset_file(dir, &d.name, suffix);
        fs::write(&path, bytes).map_err(io(&path))?;
    }
    Ok(())
}
