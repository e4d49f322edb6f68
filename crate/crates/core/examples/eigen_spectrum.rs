//! Full normalized-Laplacian spectra next to their closed forms.
//!
//! cargo run --example eigen_spectrum

use std::f64::consts::PI;

use specgraph::spectral::{build_normalized_laplacian, eigenvalues_symmetric};
use specgraph::Graph;

fn show(name: &str, g: &Graph, expected: Vec<f64>) {
    let l = build_normalized_laplacian(g).unwrap();
    let spectrum = eigenvalues_symmetric(&l).unwrap();
    let mut expected = expected;
    expected.sort_by(f64::total_cmp);
    let err = spectrum
        .eigenvalues()
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let head: Vec<String> = spectrum.eigenvalues().iter().take(6).map(|v| format!("{v:.5}")).collect();
    println!("{name:<8} trace {:>7.3}  max err {err:.1e}  [{} ...]", l.trace(), head.join(" "));
}

fn main() {
    let n = 12;
    let path: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut cycle = path.clone();
    cycle.push((n - 1, 0));
    let complete: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let star: Vec<_> = (1..n).map(|i| (0, i)).collect();

    show(
        "path",
        &Graph::from_edge_list(n, &path).unwrap(),
        (0..n).map(|j| 1.0 - (PI * j as f64 / (n - 1) as f64).cos()).collect(),
    );
    show(
        "cycle",
        &Graph::from_edge_list(n, &cycle).unwrap(),
        (0..n).map(|j| 1.0 - (2.0 * PI * j as f64 / n as f64).cos()).collect(),
    );
    let mut kn = vec![n as f64 / (n - 1) as f64; n - 1];
    kn.push(0.0);
    show("complete", &Graph::from_edge_list(n, &complete).unwrap(), kn);
    let mut k1n = vec![1.0; n - 2];
    k1n.extend([0.0, 2.0]);
    show("star", &Graph::from_edge_list(n, &star).unwrap(), k1n);
}
