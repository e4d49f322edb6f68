//! The download cache, fed from a local archive through a file:// URL.
//!
//! cargo run --example fetch_cache

use std::io::Write;

use specgraph::fetch::{fetch_dataset, read_lockfile};

fn main() {
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/MUTAG");
    let work = tempfile::tempdir().unwrap();

    // pack the vendored copy the way the public archive is laid out
    let zip_path = work.path().join("MUTAG.zip");
    let mut z = zip::ZipWriter::new(std::fs::File::create(&zip_path).unwrap());
    for entry in std::fs::read_dir(src).unwrap() {
        let p = entry.unwrap().path();
        let name = format!("MUTAG/{}", p.file_name().unwrap().to_string_lossy());
        z.start_file(name, zip::write::SimpleFileOptions::default()).unwrap();
        z.write_all(&std::fs::read(&p).unwrap()).unwrap();
    }
    z.finish().unwrap();

    let cache = work.path().join("cache");
    let template = format!("file://{}/{{name}}.zip", work.path().display());
    let dir = fetch_dataset("MUTAG", &cache, &template).unwrap();
    println!("fetched into {}", dir.display());
    println!("lockfile {:?}", read_lockfile(&cache).unwrap());

    std::fs::remove_file(&zip_path).unwrap();
    let again = fetch_dataset("MUTAG", &cache, &template).unwrap();
    println!("second call served from cache: {}", again == dir);
}
