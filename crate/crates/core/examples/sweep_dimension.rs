//! Accuracy as a function of the embedding width.
//!
//! cargo run --release --example sweep_dimension

use specgraph::classifiers::ClassifierSpec;
use specgraph::datasets::{self, SWEEP_KS};
use specgraph::eval::{stratified_folds, sweep_embedding_dim};
use specgraph::{class_bias, parse_tu_dataset};

fn main() {
    let d = parse_tu_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG"), "MUTAG").unwrap();
    let plan = stratified_folds(&d.labels, 10, 1).unwrap();
    let rfc: ClassifierSpec = "rfc".parse().unwrap();
    let published = datasets::lookup("MUTAG").unwrap();

    println!("class bias {:.1}%", class_bias(&d));
    for r in sweep_embedding_dim(&d, &SWEEP_KS, &rfc, &plan).unwrap() {
        println!("k={:<3} {:5.1}%   published {:.1}%", r.k, r.mean_percent(), published.rfc_at(r.k).unwrap());
    }
}
