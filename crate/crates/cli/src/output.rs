use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use purify_core::curve::round_significant;
use purify_core::YieldPoint;

pub const CURVE_HEADER: &str = "F,yield_hashing,best_k,yield_recurrence,best_m,yield_ms,yield_ls,yield_combined";
pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn round(x: f64) -> f64 {
    round_significant(x, SIGNIFICANT_DIGITS)
}

pub fn round_point(p: &YieldPoint) -> YieldPoint {
    let r = |v: Option<f64>| v.map(round);
    YieldPoint {
        fidelity: round(p.fidelity),
        yield_hashing: r(p.yield_hashing),
        best_k: p.best_k,
        yield_recurrence: r(p.yield_recurrence),
        best_m: p.best_m,
        yield_ms: r(p.yield_ms),
        yield_ls: r(p.yield_ls),
        yield_combined: r(p.yield_combined),
    }
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Fixed header and column order; values already rounded.
pub fn write_curve_csv(points: &[YieldPoint], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CURVE_HEADER.split(','))?;
    for p in points {
        w.write_record([
            p.fidelity.to_string(),
            cell(p.yield_hashing),
            cell(p.best_k),
            cell(p.yield_recurrence),
            cell(p.best_m),
            cell(p.yield_ms),
            cell(p.yield_ls),
            cell(p.yield_combined),
        ])?;
    }
    w.flush()?;
    Ok(())
}
