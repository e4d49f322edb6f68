use std::io::{self, Write};

use super::{CvReport, HpRecord};

pub const CV_CSV_HEADER: &str = "dataset,classifier,k,fold,accuracy,embed_ms,fit_ms,predict_ms";
pub const SWEEP_CSV_HEADER: &str = "dataset,param,value,fold,accuracy";

fn ms(d: std::time::Duration, timings: bool) -> String {
    if timings {
        format!("{:.3}", d.as_secs_f64() * 1e3)
    } else {
        "0".into()
    }
}

/// One row per fold. With `timings == false` the time columns are written as
/// `0` so the output is reproducible byte for byte.
pub fn write_cv_csv<W: Write>(
    mut w: W,
    rows: &[(String, CvReport)],
    header: bool,
    timings: bool,
) -> io::Result<()> {
    if header {
        writeln!(w, "{CV_CSV_HEADER}")?;
    }
    for (dataset, r) in rows {
        for f in &r.folds {
            writeln!(
                w,
                "{dataset},{},{},{},{:.6},{},{},{}",
                r.classifier,
                r.k,
                f.fold,
                f.accuracy,
                ms(r.embed_time, timings),
                ms(f.fit_time, timings),
                ms(f.predict_time, timings),
            )?;
        }
    }
    Ok(())
}

pub fn write_sweep_csv<W: Write>(mut w: W, dataset: &str, records: &[HpRecord], header: bool) -> io::Result<()> {
    if header {
        writeln!(w, "{SWEEP_CSV_HEADER}")?;
    }
    for r in records {
        writeln!(w, "{dataset},{},{},{},{:.6}", r.param, r.value, r.fold, r.accuracy)?;
    }
    Ok(())
}
