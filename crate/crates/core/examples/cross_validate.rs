//! 10-fold cross-validation of every built-in classifier on MUTAG.
//!
//! cargo run --release --example cross_validate

use specgraph::classifiers::ClassifierSpec;
use specgraph::eval::{cross_validate, stratified_folds};
use specgraph::parse_tu_dataset;
use specgraph::spectral::{embed_dataset, EmbeddingDim};

fn main() {
    let d = parse_tu_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG"), "MUTAG").unwrap();
    let e = embed_dataset(&d, EmbeddingDim::Auto).unwrap();
    let plan = stratified_folds(&d.labels, 10, 1).unwrap();
    println!("MUTAG, k = {}, fold sizes {:?}", e.k, plan.fold_sizes());

    for name in ["rfc", "knn1", "knn15", "ridge"] {
        let spec: ClassifierSpec = name.parse().unwrap();
        let r = cross_validate(&e.features, &e.labels, &spec, &plan).unwrap();
        println!(
            "{name:<6} {:5.1}% +- {:4.1}   fit {:?}",
            r.mean_percent(),
            100.0 * r.std,
            r.fit_time()
        );
    }
}
