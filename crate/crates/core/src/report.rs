//! Persisted report formats: CSV with 17 significant digits and JSON lines.

use std::io::Write;

use num_complex::Complex64;
use serde_json::json;

use crate::delta::{DeltaSample, MajorationReport};
use crate::error::Result;
use crate::mu::{GridSample, ScanReport};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt17(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        String::new()
    }
}

pub const DELTA_HEADER: [&str; 7] =
    ["t", "re_delta_s", "im_delta_s", "re_delta_line", "im_delta_line", "ratio_observed", "ratio_predicted"];

/// One row per sample; flagged samples leave `ratio_observed` empty.
pub fn write_ratio_csv<W: Write>(samples: &[DeltaSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DELTA_HEADER)?;
    for s in samples {
        w.write_record([
            fmt17(s.t),
            fmt17(s.delta_s.re),
            fmt17(s.delta_s.im),
            fmt17(s.delta_line.re),
            fmt17(s.delta_line.im),
            opt17(s.ratio_observed),
            fmt17(s.ratio_predicted),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Same header as the ratio CSV; only the line columns are populated.
pub fn write_majoration_csv<W: Write>(rep: &MajorationReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DELTA_HEADER)?;
    for s in &rep.samples {
        let line = [fmt17(s.delta_line.re), fmt17(s.delta_line.im)];
        w.write_record([fmt17(s.t), String::new(), String::new(), line[0].clone(), line[1].clone(), String::new(), String::new()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_heatmap_csv<W: Write>(grid: &[GridSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sigma", "tau", "abs_mu"])?;
    for g in grid {
        w.write_record([fmt17(g.sigma), fmt17(g.tau), fmt17(g.abs_mu)])?;
    }
    w.flush()?;
    Ok(())
}

fn cjson(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

/// One `zero` line per zero, one `candidate` line per unresolved seed and a
/// closing `summary` line.
pub fn write_scan_jsonl<W: Write>(rep: &ScanReport, mut out: W) -> Result<()> {
    for z in &rep.zeros {
        let line = json!({
            "kind": "zero",
            "location": cjson(z.location),
            "mu_abs": z.mu_abs,
            "winding": z.winding,
            "partner_value": z.partner_value.map(cjson),
            "partner_nonzero": z.partner_nonzero,
            "critical_line": z.critical_line,
            "iterations": z.iterations,
        });
        writeln!(out, "{line}")?;
    }
    for c in &rep.candidates {
        let line = json!({ "kind": "candidate", "seed": cjson(c.seed), "seed_abs_mu": c.seed_abs_mu, "reason": c.reason });
        writeln!(out, "{line}")?;
    }
    let summary = json!({
        "kind": "summary",
        "eta": rep.eta_id,
        "sigma": [rep.region.sigma.0, rep.region.sigma.1, rep.region.sigma_step],
        "tau": [rep.region.tau.0, rep.region.tau.1, rep.region.tau_step],
        "zeros": rep.zeros.len(),
        "candidates": rep.candidates.len(),
        "line_hypothesis_min": rep.line_hypothesis_min,
        "line_hypothesis_argmin": rep.line_hypothesis_argmin,
    });
    writeln!(out, "{summary}")?;
    Ok(())
}
