use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::format::{fmt_sig, render_table};
use super::{apply_data, apply_model, CliError, Command, Context, EXIT_CHECK_FAILED, EXIT_DATA, EXIT_OK};
use crate::classifiers::{decode_forest, encode_forest, fit_forest, predict_forest, ClassifierSpec};
use crate::datasets::{self, within_tolerance, KnownDataset, SWEEP_KS};
use crate::eval::{
    cross_validate, paper_grid, stratified_folds, sweep_embedding_dim, sweep_hyperparameters, write_cv_csv,
    write_sweep_csv, CvReport, HpValue, HyperParam,
};
use crate::fetch::{fetch_dataset, is_cached};
use crate::spectral::{embed_dataset, EmbeddingDim};
use crate::tu::{class_bias, parse_tu_dataset, Dataset};

pub(super) fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<i32, CliError> {
    match cmd {
        Command::Fetch { data } => {
            apply_data(&mut ctx.cfg, data);
            fetch(ctx)
        }
        Command::Embed { data, k } => {
            apply_data(&mut ctx.cfg, data);
            if let Some(k) = k {
                ctx.cfg.k = *k;
            }
            embed(ctx)
        }
        Command::Train {
            data,
            model_args,
            k,
            model,
        } => {
            apply_data(&mut ctx.cfg, data);
            apply_model(&mut ctx.cfg, model_args)?;
            if let Some(k) = k {
                ctx.cfg.k = *k;
            }
            train(ctx, model)
        }
        Command::Predict { data, model, output } => {
            apply_data(&mut ctx.cfg, data);
            predict(ctx, model, output.as_deref())
        }
        Command::Bench {
            data,
            model_args,
            k,
            check,
        } => {
            apply_data(&mut ctx.cfg, data);
            apply_model(&mut ctx.cfg, model_args)?;
            if let Some(k) = k {
                ctx.cfg.k = *k;
            }
            bench(ctx, *check)
        }
        Command::SweepK {
            data,
            model_args,
            k,
            check,
        } => {
            apply_data(&mut ctx.cfg, data);
            apply_model(&mut ctx.cfg, model_args)?;
            let ks = match k {
                None => SWEEP_KS.to_vec(),
                Some(list) => parse_k_list(list)?,
            };
            sweep_k(ctx, &ks, *check)
        }
        Command::SweepHp {
            data,
            model_args,
            k,
            params,
            values,
        } => {
            apply_data(&mut ctx.cfg, data);
            apply_model(&mut ctx.cfg, model_args)?;
            if let Some(k) = k {
                ctx.cfg.k = *k;
            }
            let grid = build_grid(params, values.as_deref())?;
            sweep_hp(ctx, &grid)
        }
    }
}

fn parse_k_list(list: &str) -> Result<Vec<usize>, CliError> {
    let parts = crate::config::split_list(list);
    if parts.is_empty() {
        return Err(CliError::Usage("empty k list".into()));
    }
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(CliError::Usage(format!("bad embedding width {p:?} in --k"))),
        })
        .collect()
}

fn build_grid(params: &[String], values: Option<&str>) -> Result<Vec<(HyperParam, Vec<HpValue>)>, CliError> {
    let names: Vec<String> = params.iter().flat_map(|p| crate::config::split_list(p)).collect();
    if names.is_empty() {
        if values.is_some() {
            return Err(CliError::Usage("--values needs exactly one --param".into()));
        }
        return Ok(paper_grid());
    }
    let parsed = names
        .iter()
        .map(|n| n.parse::<HyperParam>())
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(v) = values {
        if parsed.len() != 1 {
            return Err(CliError::Usage("--values needs exactly one --param".into()));
        }
        let vals = crate::config::split_list(v)
            .iter()
            .map(|s| parsed[0].parse_value(s))
            .collect::<Result<Vec<_>, _>>()?;
        if vals.is_empty() {
            return Err(CliError::Usage("empty --values list".into()));
        }
        return Ok(vec![(parsed[0], vals)]);
    }
    let full = paper_grid();
    Ok(parsed
        .into_iter()
        .map(|p| full.iter().find(|(q, _)| *q == p).cloned().expect("every parameter has a grid"))
        .collect())
}

fn known(names: &[String]) -> Result<Vec<&'static KnownDataset>, CliError> {
    if names.is_empty() {
        return Err(CliError::Usage("no datasets given".into()));
    }
    names
        .iter()
        .map(|n| {
            datasets::lookup(n).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown dataset {n:?}; known datasets: {}",
                    datasets::known_names().join(", ")
                ))
            })
        })
        .collect()
}

fn single(names: &[String]) -> Result<&'static KnownDataset, CliError> {
    let ds = known(names)?;
    match ds.as_slice() {
        [d] => Ok(d),
        _ => Err(CliError::Usage("this command takes exactly one --dataset".into())),
    }
}

fn locate(ctx: &Context, name: &str) -> Result<PathBuf, CliError> {
    if let Some(dir) = &ctx.data_dir {
        for candidate in [dir.join(name), dir.clone()] {
            if is_cached(&candidate, name) {
                return Ok(candidate);
            }
        }
        return Err(CliError::Data(format!("{name}: no dataset files under {}", dir.display())));
    }
    Ok(fetch_dataset(name, &ctx.cfg.cache_dir, &ctx.cfg.url_template)?)
}

fn load(ctx: &Context, d: &KnownDataset) -> Result<Dataset, CliError> {
    let dir = locate(ctx, d.name)?;
    Ok(parse_tu_dataset(dir, d.name)?)
}

fn create_out(ctx: &Context, file: &str) -> Result<(PathBuf, fs::File), CliError> {
    fs::create_dir_all(&ctx.cfg.out_dir)?;
    let path = ctx.cfg.out_dir.join(file);
    let f = fs::File::create(&path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok((path, f))
}

fn fetch(ctx: &Context) -> Result<i32, CliError> {
    let mut code = EXIT_OK;
    for d in known(&ctx.cfg.datasets)? {
        match locate(ctx, d.name) {
            Ok(dir) => println!("{}\t{}", d.name, dir.display()),
            Err(e) => {
                eprintln!("error: {e}");
                code = EXIT_DATA;
            }
        }
    }
    Ok(code)
}

fn embed(ctx: &Context) -> Result<i32, CliError> {
    let mut code = EXIT_OK;
    for d in known(&ctx.cfg.datasets)? {
        let result = (|| -> Result<(), CliError> {
            let ds = load(ctx, d)?;
            let e = embed_dataset(&ds, ctx.cfg.k)?;
            let (path, f) = create_out(ctx, &format!("{}_embedding.csv", d.name))?;
            let mut w = std::io::BufWriter::new(f);
            let cols: Vec<String> = (1..=e.k).map(|i| format!("s{i}")).collect();
            writeln!(w, "graph_id,label,{}", cols.join(","))?;
            for (i, row) in e.features.rows().enumerate() {
                let raw = ds.raw_label(e.labels[i]).expect("label in map");
                let vals: Vec<String> = row.iter().map(|&v| fmt_sig(v, 12)).collect();
                writeln!(w, "{},{raw},{}", i + 1, vals.join(","))?;
            }
            w.flush()?;
            println!("{}: {} graphs x {} -> {}", d.name, ds.len(), e.k, path.display());
            Ok(())
        })();
        if let Err(e) = result {
            eprintln!("error: {}: {e}", d.name);
            code = EXIT_DATA;
        }
    }
    Ok(code)
}

fn train(ctx: &Context, model_path: &Path) -> Result<i32, CliError> {
    let d = single(&ctx.cfg.datasets)?;
    let specs = ctx.cfg.classifiers().map_err(CliError::Usage)?;
    if !matches!(specs.as_slice(), [ClassifierSpec::Forest(_)]) {
        return Err(CliError::Usage("train saves random forests only (--classifier rfc)".into()));
    }
    let ds = load(ctx, d)?;
    let e = embed_dataset(&ds, ctx.cfg.k)?;
    let model = fit_forest(&e.features, &e.labels, &ctx.cfg.forest)?;
    if let Some(parent) = model_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(model_path, encode_forest(&model))
        .map_err(|e| CliError::Data(format!("{}: {e}", model_path.display())))?;
    println!(
        "{}: {} trees on {} graphs, k = {} -> {}",
        d.name,
        model.trees.len(),
        ds.len(),
        e.k,
        model_path.display()
    );
    Ok(EXIT_OK)
}

fn predict(ctx: &Context, model_path: &Path, output: Option<&Path>) -> Result<i32, CliError> {
    let d = single(&ctx.cfg.datasets)?;
    let bytes = fs::read(model_path).map_err(|e| CliError::Data(format!("{}: {e}", model_path.display())))?;
    let model = decode_forest(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", model_path.display())))?;
    let ds = load(ctx, d)?;
    let e = embed_dataset(&ds, EmbeddingDim::Fixed(model.n_features))?;
    let predicted = predict_forest(&model, &e.features)?;

    let mut body = String::from("graph_id,label,predicted\n");
    let raw = |c: usize| ds.raw_label(c).map_or_else(|| format!("class{c}"), |r| r.to_string());
    for (i, (&y, &p)) in e.labels.iter().zip(&predicted).enumerate() {
        body.push_str(&format!("{},{},{}\n", i + 1, raw(y), raw(p)));
    }
    match output {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    let correct = e.labels.iter().zip(&predicted).filter(|(a, b)| a == b).count();
    eprintln!(
        "{}: {correct}/{} correct ({:.1}%)",
        d.name,
        ds.len(),
        100.0 * correct as f64 / ds.len().max(1) as f64
    );
    Ok(EXIT_OK)
}

fn status(check: bool, published: Option<f64>, got: f64, failed: &mut bool) -> Vec<String> {
    let mut cells = match published {
        Some(p) => vec![format!("{p:.1}"), format!("{:+.1}", got - p)],
        None => vec!["-".into(), "-".into()],
    };
    if check {
        cells.push(match published {
            Some(p) if within_tolerance(got, p) => "ok".into(),
            Some(_) => {
                *failed = true;
                "FAIL".into()
            }
            None => "-".into(),
        });
    }
    cells
}

fn bench(ctx: &Context, check: bool) -> Result<i32, CliError> {
    let sets = known(&ctx.cfg.datasets)?;
    let specs = ctx.cfg.classifiers().map_err(CliError::Usage)?;
    let started = Instant::now();
    let mut reports: Vec<(String, CvReport)> = Vec::new();
    let mut rows = Vec::new();
    let mut summary: Vec<Vec<String>> = specs.iter().map(|s| vec![format!("SF + {s}")]).collect();
    let (mut failed, mut data_error) = (false, false);

    for d in &sets {
        let result = (|| -> Result<Vec<CvReport>, CliError> {
            let ds = load(ctx, d)?;
            let plan = stratified_folds(&ds.labels, ctx.cfg.n_folds, ctx.cfg.fold_seed)?;
            let t = Instant::now();
            let e = embed_dataset(&ds, ctx.cfg.k)?;
            let embed_time = t.elapsed();
            specs
                .iter()
                .map(|s| {
                    let mut r = cross_validate(&e.features, &e.labels, s, &plan)?;
                    r.embed_time = embed_time;
                    Ok(r)
                })
                .collect()
        })();
        match result {
            Ok(rs) => {
                for (i, r) in rs.into_iter().enumerate() {
                    let published = match ctx.cfg.k {
                        EmbeddingDim::Auto => d.accuracy_for(&r.classifier),
                        EmbeddingDim::Fixed(_) => None,
                    };
                    let got = r.mean_percent();
                    let mut row = vec![
                        d.name.to_string(),
                        r.k.to_string(),
                        r.classifier.clone(),
                        format!("{got:.1}"),
                        format!("{:.1}", 100.0 * r.std),
                    ];
                    row.extend(status(check, published, got, &mut failed));
                    rows.push(row);
                    summary[i].push(format!("{got:.1}"));
                    reports.push((d.name.to_string(), r));
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", d.name);
                data_error = true;
                rows.push(vec![d.name.to_string(), "-".into(), "error".into()]);
                for s in &mut summary {
                    s.push("-".into());
                }
            }
        }
    }

    let (path, f) = create_out(ctx, "bench.csv")?;
    let mut w = std::io::BufWriter::new(f);
    write_cv_csv(&mut w, &reports, true, ctx.cfg.timings)?;
    w.flush()?;

    let mut header = vec!["dataset", "k", "classifier", "accuracy", "std", "published", "delta"];
    if check {
        header.push("check");
    }
    print!("{}", render_table(&header, &rows));
    println!();
    let mut sum_header = vec![""];
    sum_header.extend(sets.iter().map(|d| d.short));
    print!("{}", render_table(&sum_header, &summary));
    if ctx.cfg.timings {
        println!("total wall-clock: {:.1} s", started.elapsed().as_secs_f64());
    }
    log::info!("wrote {}", path.display());
    Ok(if data_error {
        EXIT_DATA
    } else if failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn sweep_k(ctx: &Context, ks: &[usize], check: bool) -> Result<i32, CliError> {
    let sets = known(&ctx.cfg.datasets)?;
    let specs = ctx.cfg.classifiers().map_err(CliError::Usage)?;
    let mut reports: Vec<(String, CvReport)> = Vec::new();
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let (mut failed, mut data_error) = (false, false);

    for d in &sets {
        let result = (|| -> Result<(f64, Vec<CvReport>), CliError> {
            let ds = load(ctx, d)?;
            let plan = stratified_folds(&ds.labels, ctx.cfg.n_folds, ctx.cfg.fold_seed)?;
            let mut all = Vec::new();
            for s in &specs {
                all.extend(sweep_embedding_dim(&ds, ks, s, &plan)?);
            }
            Ok((class_bias(&ds), all))
        })();
        match result {
            Ok((bias, rs)) => {
                for r in rs {
                    let got = r.mean_percent();
                    let published = (r.classifier == "rfc").then(|| d.rfc_at(r.k)).flatten();
                    let mut row = vec![
                        d.name.to_string(),
                        r.classifier.clone(),
                        r.k.to_string(),
                        format!("{got:.1}"),
                        format!("{:.1}", 100.0 * r.std),
                    ];
                    row.extend(status(check, published, got, &mut failed));
                    rows.push(row);
                    if check && r.k == 1 {
                        let beats = got > bias;
                        failed |= !beats;
                        notes.push(format!(
                            "{} {} k=1: {got:.1} vs class bias {bias:.1}: {}",
                            d.name,
                            r.classifier,
                            if beats { "ok" } else { "FAIL" }
                        ));
                    }
                    reports.push((d.name.to_string(), r));
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", d.name);
                data_error = true;
                rows.push(vec![d.name.to_string(), "error".into()]);
            }
        }
    }

    let (path, f) = create_out(ctx, "sweep_k.csv")?;
    let mut w = std::io::BufWriter::new(f);
    write_cv_csv(&mut w, &reports, true, ctx.cfg.timings)?;
    w.flush()?;
    let mut header = vec!["dataset", "classifier", "k", "accuracy", "std", "published", "delta"];
    if check {
        header.push("check");
    }
    print!("{}", render_table(&header, &rows));
    for n in notes {
        println!("{n}");
    }
    log::info!("wrote {}", path.display());
    Ok(if data_error {
        EXIT_DATA
    } else if failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn sweep_hp(ctx: &Context, grid: &[(HyperParam, Vec<HpValue>)]) -> Result<i32, CliError> {
    let sets = known(&ctx.cfg.datasets)?;
    let mut csv = Vec::new();
    let mut rows = Vec::new();
    let mut data_error = false;

    for (i, d) in sets.iter().enumerate() {
        let result = (|| -> Result<_, CliError> {
            let ds = load(ctx, d)?;
            let plan = stratified_folds(&ds.labels, ctx.cfg.n_folds, ctx.cfg.fold_seed)?;
            let e = embed_dataset(&ds, ctx.cfg.k)?;
            Ok(sweep_hyperparameters(&e.features, &e.labels, grid, &ctx.cfg.forest, &plan)?)
        })();
        match result {
            Ok(records) => {
                write_sweep_csv(&mut csv, d.name, &records, i == 0)?;
                for (param, values) in grid {
                    for v in values {
                        let acc: Vec<f64> = records
                            .iter()
                            .filter(|r| r.param == *param && r.value == *v)
                            .map(|r| 100.0 * r.accuracy)
                            .collect();
                        let mean = acc.iter().sum::<f64>() / acc.len().max(1) as f64;
                        let lo = acc.iter().cloned().fold(f64::INFINITY, f64::min);
                        let hi = acc.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                        rows.push(vec![
                            d.name.to_string(),
                            param.to_string(),
                            v.to_string(),
                            format!("{mean:.1}"),
                            format!("{lo:.1}"),
                            format!("{hi:.1}"),
                        ]);
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", d.name);
                data_error = true;
                rows.push(vec![d.name.to_string(), "error".into()]);
            }
        }
    }
    if csv.is_empty() {
        write_sweep_csv(&mut csv, "", &[], true)?;
    }
    let (path, mut f) = create_out(ctx, "sweep_hp.csv")?;
    f.write_all(&csv)?;
    print!(
        "{}",
        render_table(&["dataset", "param", "value", "mean", "min", "max"], &rows)
    );
    log::info!("wrote {}", path.display());
    Ok(if data_error { EXIT_DATA } else { EXIT_OK })
}
