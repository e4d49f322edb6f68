//! Spectral features of a single small graph.
//!
//! cargo run --example embed_graph

use specgraph::{largest_connected_component, spectral_features, Graph};

fn main() {
    // a triangle with a pendant path, plus an isolated edge that the
    // embedding ignores
    let g = Graph::from_edge_list(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (5, 6)]).unwrap();
    let lcc = largest_connected_component(&g).unwrap();
    println!("nodes {}  edges {}  lcc {} nodes", g.n_nodes(), g.n_edges(), lcc.n_nodes());

    for k in [3, 4, 8] {
        let e = spectral_features(&g, k).unwrap();
        let vals: Vec<String> = e.values.iter().map(|v| format!("{v:.4}")).collect();
        println!("k={k}: [{}]  ({} informative)", vals.join(", "), e.n_informative());
    }
}
