use std::io::Write;

use crate::error::{Error, Result};
use crate::estimate::BandAverageResult;
use crate::field::FieldRealization;
use crate::forward::{FarFieldRecord, FarFieldValue};
use crate::recover::StrengthGrid;
use crate::scalar::Real;

fn axis_names(prefix: &str, d: usize) -> Vec<String> {
    (0..d).map(|a| format!("{prefix}{}", a + 1)).collect()
}

fn value_columns<T: Real>(v: &FarFieldValue<T>) -> (Vec<String>, Vec<String>) {
    let mut names = Vec::new();
    let mut cells = Vec::new();
    let mut push = |label: String, z: &num_complex::Complex<T>| {
        names.push(format!("re_{label}"));
        names.push(format!("im_{label}"));
        cells.push(z.re.to_string());
        cells.push(z.im.to_string());
    };
    match v {
        FarFieldValue::Scalar(z) => push("0".into(), z),
        FarFieldValue::Vector(c) => c.iter().enumerate().for_each(|(i, z)| push(i.to_string(), z)),
        FarFieldValue::Elastic { p, s } => {
            p.iter().enumerate().for_each(|(i, z)| push(format!("p{i}"), z));
            s.iter().enumerate().for_each(|(i, z)| push(format!("s{i}"), z));
        }
    }
    (names, cells)
}

/// Far-field records as CSV: `kind, seed, x1.., frequency, re_*, im_*`.
/// All records must share dimension and value layout.
pub fn write_farfield_csv<T: Real, W: Write>(w: W, records: &[FarFieldRecord<T>]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let Some(first) = records.first() else {
        return Ok(());
    };
    let d = first.xhat.len();
    let (value_names, _) = value_columns(&first.value);
    let mut header = vec!["kind".to_string(), "seed".to_string()];
    header.extend(axis_names("x", d));
    header.push("frequency".into());
    header.extend(value_names.iter().cloned());
    out.write_record(&header)?;
    for r in records {
        let (names, cells) = value_columns(&r.value);
        if r.xhat.len() != d || names != value_names {
            return Err(Error::Mismatch("far-field records with different layouts".into()));
        }
        let mut row = vec![r.kind.name().to_string(), r.seed.to_string()];
        row.extend(r.xhat.iter().map(|v| v.to_string()));
        row.push(r.frequency.to_string());
        row.extend(cells);
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Band-average results as CSV, one row per matrix entry, keyed by the
/// configuration hash and seeds.
pub fn write_band_csv<T: Real, W: Write>(w: W, config_hash: &str, results: &[BandAverageResult<T>]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "config_hash", "seeds", "kind", "target", "dim", "order", "q", "step", "tau", "xhat", "row", "col", "re", "im",
        "std_error", "nodes", "samples",
    ])?;
    for r in results {
        let c = &r.config;
        let seeds = r.seeds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";");
        let xhat = c.xhat.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";");
        for j in 0..r.components {
            for l in 0..r.components {
                let e = j * r.components + l;
                out.write_record([
                    config_hash.to_string(),
                    seeds.clone(),
                    c.kind.name().to_string(),
                    c.target.name().to_string(),
                    c.dim.to_string(),
                    c.order.to_string(),
                    c.q.to_string(),
                    c.step.to_string(),
                    c.tau.to_string(),
                    xhat.clone(),
                    j.to_string(),
                    l.to_string(),
                    r.estimate[e].re.to_string(),
                    r.estimate[e].im.to_string(),
                    r.std_error[e].to_string(),
                    r.nodes.to_string(),
                    r.samples.to_string(),
                ])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Lossy CSV export of a strength grid: `node, x1.., row, col, re, im`.
pub fn write_strength_csv<T: Real, W: Write>(w: W, grid: &StrengthGrid<T>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let d = grid.grid.dim();
    let mut header = vec!["node".to_string()];
    header.extend(axis_names("x", d));
    header.extend(["row", "col", "re", "im"].map(String::from));
    out.write_record(&header)?;
    let c = grid.components;
    for e in 0..grid.entries() {
        for (node, z) in grid.entry(e).iter().enumerate() {
            let p = grid.grid.position(node);
            let mut row = vec![node.to_string()];
            row.extend(p[..d].iter().map(|v| v.to_string()));
            row.extend([(e / c).to_string(), (e % c).to_string(), z.re.to_string(), z.im.to_string()]);
            out.write_record(&row)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Lossy CSV export of a realization: `node, x1.., component, re, im`.
pub fn write_realization_csv<T: Real, W: Write>(w: W, field: &FieldRealization<T>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let d = field.grid.dim();
    let n = field.grid.len();
    let mut header = vec!["node".to_string()];
    header.extend(axis_names("x", d));
    header.extend(["component", "re", "im"].map(String::from));
    out.write_record(&header)?;
    for (i, z) in field.values.iter().enumerate() {
        let node = i % n;
        let p = field.grid.position(node);
        let mut row = vec![node.to_string()];
        row.extend(p[..d].iter().map(|v| v.to_string()));
        row.extend([(i / n).to_string(), z.re.to_string(), z.im.to_string()]);
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Plot-ready line through the truth's peak along axis 0, with truth and
/// reconstruction side by side: `x, truth_re, truth_im, recon_re, recon_im`.
pub fn write_slice_csv<T: Real, W: Write>(w: W, truth: &StrengthGrid<T>, recon: &StrengthGrid<T>, entry: usize) -> Result<()> {
    truth.grid.check_same(&recon.grid)?;
    if entry >= truth.entries() || truth.components != recon.components {
        return Err(Error::Mismatch(format!("entry {entry} is not shared by truth and reconstruction")));
    }
    let grid = truth.grid;
    let mut idx = grid.unflatten(truth.peak(entry));
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "truth_re", "truth_im", "recon_re", "recon_im"])?;
    for i in 0..grid.nodes_per_axis() {
        idx[0] = i;
        let node = grid.flatten(&idx[..grid.dim()]);
        let t = truth.entry(entry)[node];
        let r = recon.entry(entry)[node];
        out.write_record([
            grid.coord(i).to_string(),
            t.re.to_string(),
            t.im.to_string(),
            r.re.to_string(),
            r.im.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Generic two-column-or-wider numeric trace with a header.
pub fn write_trace_csv<W: Write>(w: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        if r.len() != header.len() {
            return Err(Error::Mismatch(format!("trace row has {} cells, header {}", r.len(), header.len())));
        }
        out.write_record(r.iter().map(|v| v.to_string()))?;
    }
    out.flush()?;
    Ok(())
}
