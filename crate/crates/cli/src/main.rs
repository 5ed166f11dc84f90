//! `strip-rigidity` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical failure or a
//! verification outside its threshold.

mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use strip_rigidity::delta::{delta_direct, delta_volterra, majoration_check, prop1_residual, ratio_series};
use strip_rigidity::error::check_tol;
use strip_rigidity::eta::{hypothesis_check, rotation_estimate};
use strip_rigidity::mu::{mu_eval, scan_strip, ScanOptions, ScanRegion};
use strip_rigidity::report::{fmt17, write_heatmap_csv, write_majoration_csv, write_ratio_csv, write_scan_jsonl};
use strip_rigidity::solver::{lemma1_residual, psi_ode_oracle, psi_trajectory};
use strip_rigidity::{parallel, Complex64, Error, EtaFunction, StripPoint};

use args::{Cli, Command, IdentityArgs, Verify};

enum Failure {
    Usage(String),
    Core(Error),
    /// A verification ran but missed its threshold.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Core(Error::Csv(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let argv = match args::expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Psi(a) => cmd_psi(a),
        Command::Mu(a) => cmd_mu(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(v) => match v {
            Verify::Volterra(a) => cmd_identity(a, Identity::Volterra),
            Verify::Prop1(a) => cmd_identity(a, Identity::Prop1),
            Verify::Lemma1(a) => cmd_lemma1(a),
            Verify::Majoration(a) => cmd_majoration(a),
            Verify::Ratio(a) => cmd_ratio(a),
        },
        Command::Rotation(a) => cmd_rotation(a),
    }
}

fn eta(spec: &str) -> Result<EtaFunction, Failure> {
    EtaFunction::parse(spec).map_err(|e| Failure::Usage(e.to_string()))
}

fn tol(t: f64) -> Result<f64, Failure> {
    check_tol(t).map_err(|e| Failure::Usage(e.to_string()))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_psi(a: args::PsiArgs) -> Outcome {
    let eta = eta(&a.common.eta)?;
    let tol = tol(a.common.tol)?;
    let w = StripPoint::new(a.w);
    let traj = psi_trajectory(&eta, w, &a.t_grid.0, tol)?;
    let oracle = if a.oracle {
        let vals = parallel::map(&a.t_grid.0, |&t| psi_ode_oracle(&eta, w, t, tol));
        Some(vals.into_iter().collect::<strip_rigidity::Result<Vec<Complex64>>>()?)
    } else {
        None
    };
    let mut wr = csv::Writer::from_writer(output(a.common.out.as_deref())?);
    let mut header = vec!["t", "re_psi", "im_psi"];
    if oracle.is_some() {
        header.extend(["re_oracle", "im_oracle", "diff"]);
    }
    wr.write_record(&header)?;
    for (k, p) in traj.iter().enumerate() {
        let mut row = vec![fmt17(p.t), fmt17(p.psi.re), fmt17(p.psi.im)];
        if let Some(o) = &oracle {
            row.extend([fmt17(o[k].re), fmt17(o[k].im), fmt17((o[k] - p.psi).norm())]);
        }
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

fn cmd_mu(a: args::MuArgs) -> Outcome {
    let eta = eta(&a.common.eta)?;
    let r = mu_eval(&eta, StripPoint::new(a.w), tol(a.common.tol)?)?;
    let mut out = output(a.common.out.as_deref())?;
    writeln!(out, "{}", json!({ "re": r.value.re, "im": r.value.im, "err": r.error }))?;
    out.flush()?;
    Ok(())
}

fn heatmap_path(out: &Path) -> PathBuf {
    out.with_extension("heatmap.csv")
}

fn cmd_scan(a: args::ScanArgs) -> Outcome {
    let eta = eta(&a.eta)?;
    let opts = ScanOptions { zero_tol: a.zero_tol, coarse_tol: tol(a.coarse_tol)?, ..ScanOptions::default() };
    let region = ScanRegion {
        sigma: (a.sigma.0, a.sigma.1),
        tau: (a.tau.0, a.tau.1),
        sigma_step: a.sigma.2,
        tau_step: a.tau.2,
    };
    let rep = scan_strip(&eta, region, opts).map_err(|e| match e {
        Error::Domain(m) => Failure::Usage(m),
        e => Failure::Core(e),
    })?;
    let mut out = output(Some(&a.out))?;
    write_scan_jsonl(&rep, &mut out)?;
    out.flush()?;
    let hm = a.heatmap.unwrap_or_else(|| heatmap_path(&a.out));
    write_heatmap_csv(&rep.grid, BufWriter::new(File::create(&hm)?))?;
    println!(
        "{}",
        json!({ "zeros": rep.zeros.len(), "candidates": rep.candidates.len(), "report": a.out, "heatmap": hm })
    );
    Ok(())
}

#[derive(Clone, Copy)]
enum Identity {
    Volterra,
    Prop1,
}

fn cmd_identity(a: IdentityArgs, which: Identity) -> Outcome {
    let eta = eta(&a.common.eta)?;
    let tol = tol(a.common.tol)?;
    let s = StripPoint::new(a.s);
    let rows = parallel::map(&a.t_grid.0, |&t| -> strip_rigidity::Result<(f64, Complex64, Complex64, f64)> {
        match which {
            Identity::Volterra => {
                let d = delta_direct(&eta, s, t, tol)?;
                let v = delta_volterra(&eta, s, t, tol)?;
                Ok((t, d, v, (d - v).norm() / (1.0 + d.norm())))
            }
            Identity::Prop1 => {
                let r = prop1_residual(&eta, s, t, tol)?;
                Ok((t, r.lhs, r.rhs, r.residual / (1.0 + r.lhs.norm() * t.sqrt())))
            }
        }
    });
    let rows = rows.into_iter().collect::<strip_rigidity::Result<Vec<_>>>()?;
    let (name, header) = match which {
        Identity::Volterra => ("volterra", ["t", "re_direct", "im_direct", "re_volterra", "im_volterra", "scaled_residual"]),
        Identity::Prop1 => ("prop1", ["t", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "scaled_residual"]),
    };
    let mut wr = csv::Writer::from_writer(output(a.common.out.as_deref())?);
    wr.write_record(header)?;
    for (t, x, y, r) in &rows {
        wr.write_record([fmt17(*t), fmt17(x.re), fmt17(x.im), fmt17(y.re), fmt17(y.im), fmt17(*r)])?;
    }
    wr.flush()?;
    let worst = rows.iter().map(|r| r.3).fold(0.0, f64::max);
    summary(name, worst <= a.threshold, json!({ "max_scaled_residual": worst, "threshold": a.threshold }))
}

/// Summary JSON goes to stderr so the table on stdout stays machine-readable.
fn summary(check: &str, pass: bool, detail: serde_json::Value) -> Outcome {
    let mut line = json!({ "check": check, "pass": pass });
    if let (Some(m), serde_json::Value::Object(d)) = (line.as_object_mut(), detail) {
        m.extend(d);
    }
    eprintln!("{line}");
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(line.to_string()))
    }
}

fn cmd_lemma1(a: args::Lemma1Args) -> Outcome {
    let eta = eta(&a.common.eta)?;
    let rep = lemma1_residual(&eta, StripPoint::new(a.w), &a.t_grid.0, tol(a.common.tol)?, a.zero_tol)?;
    let mut out = output(a.common.out.as_deref())?;
    writeln!(out, "{}", serde_json::to_string(&rep).expect("serializable report"))?;
    out.flush()?;
    let pass = rep.sup <= rep.bound + a.threshold;
    summary("lemma1", pass, json!({ "sup": rep.sup, "bound": rep.bound, "threshold": a.threshold }))
}

fn cmd_majoration(a: args::MajorationArgs) -> Outcome {
    let eta = eta(&a.common.eta)?;
    let rep = majoration_check(&eta, a.tau, &a.t_grid.0, tol(a.common.tol)?)?;
    write_majoration_csv(&rep, output(a.common.out.as_deref())?)?;
    let pass = rep.sup_value.is_finite() && (0.5..=2.0).contains(&rep.trend);
    summary("majoration", pass, json!({ "sup": rep.sup_value, "trend": rep.trend }))
}

fn cmd_ratio(a: args::RatioArgs) -> Outcome {
    let eta = eta(&a.common.eta)?;
    if !(a.t_max > 1.0) || a.points == 0 {
        return Err(Failure::Usage("ratio needs --t-max > 1 and --points >= 1".into()));
    }
    let grid = args::range_arg(&format!("log1:{}:{}", a.t_max, a.points)).map_err(Failure::Usage)?;
    let samples = ratio_series(&eta, StripPoint::new(a.s), &grid, tol(a.common.tol)?)?;
    write_ratio_csv(&samples, output(a.common.out.as_deref())?)?;
    let last = samples.iter().rev().find(|s| !s.flagged);
    let (pass, rel, observed, predicted) = match last {
        Some(s) => {
            let rel = (s.ratio_observed - s.ratio_predicted).abs() / s.ratio_predicted.abs();
            (rel <= a.threshold, rel, s.ratio_observed, s.ratio_predicted)
        }
        None => (false, f64::NAN, f64::NAN, f64::NAN),
    };
    summary(
        "ratio",
        pass,
        json!({ "t": samples.last().map(|s| s.t), "observed": observed, "predicted": predicted, "relative_error": rel, "threshold": a.threshold }),
    )
}

fn cmd_rotation(a: args::RotationArgs) -> Outcome {
    let eta = eta(&a.eta)?;
    let tol = tol(a.tol)?;
    let est = rotation_estimate(&eta, a.t, tol)?;
    let rho = a.rho.unwrap_or(est.rho_estimate);
    let n = a.grid_points.max(1);
    let grid: Vec<f64> = (0..=n).map(|k| if k == n { a.t } else { 1.0 + (a.t - 1.0) * k as f64 / n as f64 }).collect();
    let hyp = hypothesis_check(&eta, rho, &grid, tol)?;
    let mut out = output(a.out.as_deref())?;
    let line = json!({
        "eta": eta.id(),
        "T": a.t,
        "rho_estimate": { "re": est.rho_estimate.re, "im": est.rho_estimate.im },
        "error_bound": est.error_bound,
        "rho_candidate": { "re": rho.re, "im": rho.im },
        "hypothesis_sup": hyp.sup,
        "trend": hyp.trend,
    });
    writeln!(out, "{line}")?;
    out.flush()?;
    Ok(())
}
