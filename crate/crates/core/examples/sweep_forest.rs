//! One-at-a-time forest hyperparameter sweep, written as long-format CSV.
//!
//! cargo run --release --example sweep_forest

use specgraph::classifiers::ForestConfig;
use specgraph::eval::{stratified_folds, sweep_hyperparameters, write_sweep_csv, HpValue, HyperParam};
use specgraph::parse_tu_dataset;
use specgraph::spectral::{embed_dataset, EmbeddingDim};

fn main() {
    let d = parse_tu_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG"), "MUTAG").unwrap();
    let e = embed_dataset(&d, EmbeddingDim::Auto).unwrap();
    let plan = stratified_folds(&d.labels, 10, 1).unwrap();

    let grid = vec![
        (HyperParam::NTrees, vec![HpValue::Count(1), HpValue::Count(10), HpValue::Count(100)]),
        (HyperParam::MaxDepth, vec![HpValue::Count(1), HpValue::Count(5), HpValue::Count(100)]),
    ];
    let base = ForestConfig {
        n_trees: 100,
        ..ForestConfig::default()
    };
    let records = sweep_hyperparameters(&e.features, &e.labels, &grid, &base, &plan).unwrap();
    write_sweep_csv(std::io::stdout().lock(), "MUTAG", &records, true).unwrap();
}
