//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 1-4 and 9 need nothing but the vendored MUTAG copy; a failure
//! there fails the test target. Criteria 5-8 compare against published
//! accuracies and statistics on all six datasets. They run on whatever
//! datasets are present (the vendored MUTAG, plus anything already in
//! `$SPECGRAPH_CACHE` or the default cache) and report missing ones as
//! FAIL. Those lines fail the target only with `SPECGRAPH_STRICT_ACCEPTANCE=1`,
//! so an offline checkout still builds green while showing what is unmet.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use common::oracle::*;
use common::{connected_graphs, max_abs_diff, random_connected, random_permutation, rng};
use specgraph::classifiers::{encode_forest, fit_forest, ForestConfig};
use specgraph::datasets::{self, KNOWN, SWEEP_KS};
use specgraph::eval::{stratified_folds, sweep_hyperparameters, HpValue, HyperParam};
use specgraph::fetch::is_cached;
use specgraph::spectral::{build_normalized_laplacian, eigenvalues_symmetric, embed_dataset, EmbeddingDim};
use specgraph::{parse_tu_dataset, spectral_features, Graph};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn laplacian_spectrum(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let g = Graph::from_edge_list(n, edges).unwrap();
    eigenvalues_symmetric(&build_normalized_laplacian(&g).unwrap())
        .unwrap()
        .into_vec()
}

fn eigensolver_oracles() -> Verdict {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    let mut graphs = 0;
    let mut check = |got: Vec<f64>, want: Vec<f64>| {
        worst = worst.max(max_abs_diff(&got, &want));
        graphs += 1;
    };
    for n in 2..=6 {
        for edges in connected_graphs(n) {
            check(laplacian_spectrum(n, &edges), charpoly_eigenvalues(n, &edges));
        }
    }
    for n in 2..=50 {
        let complete: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        check(laplacian_spectrum(n, &complete), complete_graph_eigenvalues(n));
        let path: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        check(laplacian_spectrum(n, &path), path_eigenvalues(n));
        if n >= 3 {
            let mut cycle = path;
            cycle.push((n - 1, 0));
            check(laplacian_spectrum(n, &cycle), cycle_eigenvalues(n));
        }
    }
    for a in 1..=50 {
        for b in 1..=50 {
            let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
            check(laplacian_spectrum(a + b, &edges), complete_bipartite_eigenvalues(a, b));
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        worst <= 1e-7 && secs < 60.0,
        format!("{graphs} graphs, max deviation {worst:.1e}, {secs:.1} s"),
    )
}

fn spectral_invariants() -> Verdict {
    let mut r = rng(2024);
    let (mut lo, mut hi, mut trace_err, mut perm_dev) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64, 0.0f64);
    let mut bad_zero = 0;
    for _ in 0..1000 {
        let n = r.gen_range(2..=60);
        let p = r.gen_range(0.0..0.5);
        let g = random_connected(&mut r, n, p);
        let s = eigenvalues_symmetric(&build_normalized_laplacian(&g).unwrap())
            .unwrap()
            .into_vec();
        lo = lo.min(s[0]);
        hi = hi.max(s[n - 1]);
        trace_err = trace_err.max((s.iter().sum::<f64>() - n as f64).abs() / n as f64);
        if s.iter().filter(|&&x| x < 1e-6).count() != 1 {
            bad_zero += 1;
        }
        let base = spectral_features(&g, 60).unwrap().values;
        for _ in 0..5 {
            let perm = random_permutation(&mut r, n);
            let moved = spectral_features(&g.permuted(&perm).unwrap(), 60).unwrap().values;
            perm_dev = perm_dev.max(max_abs_diff(&base, &moved));
        }
    }
    // exact zero is not representable after rounding; the lower end gets the same 1e-8 slack as the upper
    let pass = lo >= -1e-8 && hi <= 2.0 + 1e-8 && trace_err <= 1e-6 && bad_zero == 0 && perm_dev <= 1e-9;
    verdict(
        pass,
        format!(
            "1000 graphs: eigenvalues in [{lo:.1e}, 2{:+.1e}], trace error {trace_err:.1e}*n, \
             {bad_zero} with wrong zero count, relabeling deviation {perm_dev:.1e}",
            hi - 2.0
        ),
    )
}

fn forest_determinism() -> Verdict {
    let d = parse_tu_dataset(common::mutag_dir(), "MUTAG").unwrap();
    let e = embed_dataset(&d, EmbeddingDim::Auto).unwrap();
    let cfg = ForestConfig::default();
    let bytes: Vec<Vec<u8>> = [1, 2, 8]
        .iter()
        .map(|&t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            pool.install(|| encode_forest(&fit_forest(&e.features, &e.labels, &cfg).unwrap()))
        })
        .collect();
    let same = bytes.windows(2).all(|w| w[0] == w[1]);
    verdict(same, format!("MUTAG, {} trees, {} bytes on 1/2/8 threads", cfg.n_trees, bytes[0].len()))
}

fn stratification() -> Verdict {
    let mut r = rng(77);
    let mut violations = 0;
    for _ in 0..500 {
        let n_folds = r.gen_range(2..=10);
        let n_classes = r.gen_range(2..=6);
        let mut labels: Vec<usize> = (0..n_classes)
            .flat_map(|c| vec![c; r.gen_range(n_folds..=n_folds + 150)])
            .collect();
        labels.shuffle(&mut r);
        let plan = stratified_folds(&labels, n_folds, r.gen()).unwrap();
        let n = labels.len();
        let ok_sizes = plan
            .fold_sizes()
            .iter()
            .all(|&s| s == n / n_folds || s == n.div_ceil(n_folds));
        let counts = plan.class_counts(&labels);
        let ok_classes = (0..n_classes).all(|c| {
            let total = labels.iter().filter(|&&l| l == c).count();
            counts
                .iter()
                .all(|row| row[c] == total / n_folds || row[c] == total.div_ceil(n_folds))
        });
        if !(ok_sizes && ok_classes && plan.assignments.len() == n) {
            violations += 1;
        }
    }
    verdict(violations == 0, format!("500 label vectors, {violations} violations"))
}

fn robustness() -> Verdict {
    let d = parse_tu_dataset(common::mutag_dir(), "MUTAG").unwrap();
    let e = embed_dataset(&d, EmbeddingDim::Auto).unwrap();
    let plan = stratified_folds(&d.labels, 10, 1).unwrap();
    let grid = vec![
        (HyperParam::NTrees, vec![HpValue::Count(1), HpValue::Count(500)]),
        (HyperParam::MaxDepth, vec![HpValue::Count(1), HpValue::Count(100)]),
    ];
    let records = sweep_hyperparameters(&e.features, &e.labels, &grid, &ForestConfig::default(), &plan).unwrap();
    let mean = |p: HyperParam, v: usize| {
        let acc: Vec<f64> = records
            .iter()
            .filter(|r| r.param == p && r.value == HpValue::Count(v))
            .map(|r| r.accuracy)
            .collect();
        100.0 * acc.iter().sum::<f64>() / acc.len() as f64
    };
    let (t1, t500) = (mean(HyperParam::NTrees, 1), mean(HyperParam::NTrees, 500));
    let (d1, d100) = (mean(HyperParam::MaxDepth, 1), mean(HyperParam::MaxDepth, 100));
    verdict(
        t500 - t1 > 0.0 && d1 < d100,
        format!("n_trees 1 -> 500: {t1:.1} -> {t500:.1}; max_depth 1 vs 100: {d1:.1} vs {d100:.1}"),
    )
}

/// Directory with one entry per locally available dataset.
struct Available {
    _dir: tempfile::TempDir,
    path: PathBuf,
    names: Vec<&'static str>,
}

fn available_datasets() -> Available {
    let dir = tempfile::tempdir().unwrap();
    let mut caches: Vec<PathBuf> = Vec::new();
    if let Some(c) = std::env::var_os("SPECGRAPH_CACHE") {
        caches.push(c.into());
    }
    caches.push(specgraph::config::default_cache_dir());
    let mut names = Vec::new();
    for d in &KNOWN {
        let found = if d.name == "MUTAG" {
            Some(common::mutag_dir())
        } else {
            caches.iter().map(|c| c.join(d.name)).find(|p| is_cached(p, d.name))
        };
        if let Some(src) = found {
            std::os::unix::fs::symlink(&src, dir.path().join(d.name)).unwrap();
            names.push(d.name);
        }
    }
    Available {
        path: dir.path().to_path_buf(),
        _dir: dir,
        names,
    }
}

/// Runs the CLI and returns `(exit code, table rows keyed by their leading cells)`.
fn run_cli(args: &[&str], data: &Available) -> (i32, Vec<Vec<String>>, String) {
    let out = tempfile::tempdir().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    let data_dir = data.path.to_str().unwrap();
    let out_dir = out.path().to_str().unwrap();
    full.extend(["--data-dir", data_dir, "--out", out_dir, "--no-timings"]);
    let o = Command::new(env!("CARGO_BIN_EXE_specgraph"))
        .args(&full)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&o.stdout).into_owned();
    let rows = text
        .lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect();
    (o.status.code().unwrap_or(-1), rows, text)
}

fn bench_reproduction(data: &Available) -> Verdict {
    if data.names.is_empty() {
        return verdict(false, "no datasets available");
    }
    let started = Instant::now();
    let list = data.names.join(",");
    let (_, rows, _) = run_cli(&["bench", "--check", "-d", &list], data);
    let secs = started.elapsed().as_secs_f64();
    let mut cells = Vec::new();
    let mut pass = true;
    for d in &KNOWN {
        let row = rows.iter().find(|r| r.len() >= 8 && r[0] == d.name && r[2] == "rfc");
        match row {
            Some(r) => {
                pass &= r[7] == "ok";
                cells.push(format!("{} {} ({} vs {})", d.short, r[7], r[3], d.rfc));
            }
            None => {
                pass = false;
                cells.push(format!("{} unavailable", d.short));
            }
        }
    }
    verdict(pass, format!("{}; {secs:.1} s", cells.join(", ")))
}

fn classifier_comparison(data: &Available) -> Verdict {
    let wanted = ["MUTAG", "PTC_MR", "NCI1"];
    let present: Vec<&str> = wanted.iter().copied().filter(|n| data.names.contains(n)).collect();
    let rows = if present.is_empty() {
        Vec::new()
    } else {
        run_cli(&["bench", "--check", "-c", "knn1,knn15,ridge", "-d", &present.join(",")], data).1
    };
    let mut cells = Vec::new();
    let mut pass = true;
    for name in wanted {
        let d = datasets::lookup(name).unwrap();
        for c in ["knn1", "knn15", "ridge"] {
            match rows.iter().find(|r| r.len() >= 8 && r[0] == name && r[2] == c) {
                Some(r) => {
                    pass &= r[7] == "ok";
                    cells.push(format!("{} {c} {} ({} vs {})", d.short, r[7], r[3], d.accuracy_for(c).unwrap()));
                }
                None => {
                    pass = false;
                    cells.push(format!("{} {c} unavailable", d.short));
                }
            }
        }
    }
    verdict(pass, cells.join(", "))
}

fn dimension_sweep(data: &Available) -> Verdict {
    let wanted = ["MUTAG", "NCI1"];
    let present: Vec<&str> = wanted.iter().copied().filter(|n| data.names.contains(n)).collect();
    let ks: Vec<String> = SWEEP_KS.iter().map(|k| k.to_string()).collect();
    let ks = ks.join(",");
    let rows = if present.is_empty() {
        Vec::new()
    } else {
        run_cli(&["sweep-k", "--check", "--k", &ks, "-d", &present.join(",")], data).1
    };
    let mut cells = Vec::new();
    let mut pass = true;
    for name in wanted {
        let d = datasets::lookup(name).unwrap();
        for k in SWEEP_KS {
            match rows.iter().find(|r| r.len() >= 8 && r[0] == name && r[1] == "rfc" && r[2] == k.to_string()) {
                Some(r) => {
                    pass &= r[7] == "ok";
                    cells.push(format!("{} k={k} {} ({} vs {})", d.short, r[7], r[3], d.rfc_at(k).unwrap()));
                }
                None => {
                    pass = false;
                    cells.push(format!("{} k={k} unavailable", d.short));
                }
            }
        }
    }
    // first energy level alone against the majority-class baseline
    let mt_k1 = rows
        .iter()
        .find(|r| r.len() >= 4 && r[0] == "MUTAG" && r[1] == "rfc" && r[2] == "1")
        .and_then(|r| r[3].parse::<f64>().ok());
    let bias = datasets::lookup("MUTAG").unwrap().bias;
    match mt_k1 {
        Some(a) => {
            let ok = a > 70.0 && a > bias;
            pass &= ok;
            cells.push(format!("MT k=1 {a} > 70 and > bias {bias}: {}", if ok { "ok" } else { "FAIL" }));
        }
        None => {
            pass = false;
            cells.push("MT k=1 unavailable".into());
        }
    }
    verdict(pass, cells.join(", "))
}

fn ingestion_statistics(data: &Available) -> Verdict {
    let mut cells = Vec::new();
    let mut pass = true;
    for d in &KNOWN {
        if !data.names.contains(&d.name) {
            pass = false;
            cells.push(format!("{} unavailable", d.short));
            continue;
        }
        let ds = parse_tu_dataset(data.path.join(d.name), d.name).unwrap();
        let edges = d.comparable_avg_edges(&ds);
        let ok = ds.len() == d.n_graphs
            && ds.n_classes == d.n_classes
            && (ds.avg_nodes - d.avg_nodes).abs() <= 1.0
            && (edges - d.avg_edges).abs() <= 1.0;
        pass &= ok;
        cells.push(format!(
            "{} {} ({} graphs, {} classes, |V| {:.2}, |E| {:.2})",
            d.short,
            if ok { "ok" } else { "FAIL" },
            ds.len(),
            ds.n_classes,
            ds.avg_nodes,
            edges
        ));
    }
    verdict(pass, cells.join(", "))
}

fn main() {
    // `cargo test -- --list` and filters are not meaningful here
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let strict = std::env::var("SPECGRAPH_STRICT_ACCEPTANCE").is_ok_and(|v| v == "1");
    let data = available_datasets();
    println!("datasets available: {}", data.names.join(", "));

    type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;
    let criteria: Vec<(u32, &str, bool, Check)> = vec![
        (1, "eigensolver oracle suite", true, Box::new(eigensolver_oracles)),
        (2, "spectral invariants on random graphs", true, Box::new(spectral_invariants)),
        (3, "forest determinism across thread counts", true, Box::new(forest_determinism)),
        (4, "stratified fold invariants", true, Box::new(stratification)),
        (5, "bench --check, forest accuracy per dataset", false, Box::new(|| bench_reproduction(&data))),
        (6, "kNN / ridge accuracy on MT, PTC, NCI1", false, Box::new(|| classifier_comparison(&data))),
        (7, "sweep-k --check on MUTAG and NCI1", false, Box::new(|| dimension_sweep(&data))),
        (8, "ingestion statistics", false, Box::new(|| ingestion_statistics(&data))),
        (9, "hyperparameter robustness sanity", true, Box::new(robustness)),
    ];

    let mut summary = BTreeMap::new();
    let mut blocking = 0;
    for (id, title, offline, check) in &criteria {
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}. {title}: {}", v.detail);
        if !v.pass && (*offline || strict) {
            blocking += 1;
        }
        summary.insert(*id, v.pass);
    }
    let passed = summary.values().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", summary.len());
    if blocking > 0 {
        eprintln!("{blocking} blocking criteria failed");
        std::process::exit(1);
    }
}
