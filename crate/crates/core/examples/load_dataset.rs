//! Parse a TU-format dataset and compare its statistics with the published ones.
//!
//! cargo run --example load_dataset [DIR NAME]

use specgraph::datasets;
use specgraph::{class_bias, parse_tu_dataset};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (dir, name) = match args.as_slice() {
        [dir, name] => (dir.clone(), name.clone()),
        _ => (concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG").to_string(), "MUTAG".to_string()),
    };
    let d = parse_tu_dataset(&dir, &name).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(3);
    });
    println!("{}: {} graphs, {} classes {:?}", d.name, d.len(), d.n_classes, d.raw_label_map);
    println!(
        "avg nodes {:.2}  avg edges {:.2}  avg adjacency entries {:.2}  bias {:.1}%",
        d.avg_nodes,
        d.avg_edges,
        d.avg_adjacency_entries,
        class_bias(&d)
    );
    println!("auto embedding width: {}", d.auto_dimension());
    if let Some(k) = datasets::lookup(&name) {
        println!(
            "published: {} graphs, {} classes, bias {}%, avg |V| {}, avg |E| {}",
            k.n_graphs, k.n_classes, k.bias, k.avg_nodes, k.avg_edges
        );
    }
}
