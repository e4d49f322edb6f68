//! Train a forest, serialize it, read it back and predict.
//!
//! cargo run --release --example save_load_model

use specgraph::classifiers::{decode_forest, encode_forest, fit_forest, predict_forest, ForestConfig};
use specgraph::eval::stratified_folds;
use specgraph::parse_tu_dataset;
use specgraph::spectral::{embed_dataset, EmbeddingDim};

fn main() {
    let d = parse_tu_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG"), "MUTAG").unwrap();
    let e = embed_dataset(&d, EmbeddingDim::Auto).unwrap();

    // hold out one stratified tenth
    let plan = stratified_folds(&d.labels, 10, 1).unwrap();
    let (train, test) = (plan.train_indices(0), plan.test_indices(0));
    let train_y: Vec<usize> = train.iter().map(|&i| e.labels[i]).collect();

    let model = fit_forest(&e.features.select_rows(&train), &train_y, &ForestConfig::default()).unwrap();
    let bytes = encode_forest(&model);
    let path = std::env::temp_dir().join("specgraph-mutag.sgf");
    std::fs::write(&path, &bytes).unwrap();
    println!("{} trees, {} bytes -> {}", model.trees.len(), bytes.len(), path.display());

    let loaded = decode_forest(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(loaded, model);
    let predicted = predict_forest(&loaded, &e.features.select_rows(&test)).unwrap();
    let correct = test.iter().zip(&predicted).filter(|(&i, &p)| e.labels[i] == p).count();
    println!("held-out accuracy {correct}/{}", test.len());
}
