use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use strip_rigidity::{parse_complex, Complex64};

#[derive(Debug, Parser)]
#[command(
    name = "strip-rigidity",
    version,
    about = "Boundedness functional, strip zeros and delta-Volterra checks",
    after_help = "Every flag may also come from `--config FILE` with `key = value` lines; flags on the command line win.\nWorker threads: STRIP_RIGIDITY_THREADS (0 or unset = all cores)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trajectory of psi on a t grid, optionally against the ODE oracle.
    Psi(PsiArgs),
    /// mu_eta(w) as one JSON line.
    Mu(MuArgs),
    /// Zeros of mu_eta in a strip rectangle.
    Scan(ScanArgs),
    /// Identity and asymptotics checks.
    #[command(subcommand)]
    Verify(Verify),
    /// Rotation number estimate and hypothesis grid check.
    Rotation(RotationArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// eta spec: const:<c> | osc:<rho>,<amp>,<omega> | frac | file:<path>
    #[arg(long)]
    pub eta: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PsiArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w: Complex64,
    /// A:B:N (N+1 linear points) or logA:B:N
    #[arg(long, value_parser = grid_arg)]
    pub t_grid: Grid,
    /// Add ODE oracle columns and their difference.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w: Complex64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub eta: String,
    /// A:B:STEP
    #[arg(long, value_parser = step_arg, allow_hyphen_values = true)]
    pub sigma: (f64, f64, f64),
    /// A:B:STEP
    #[arg(long, value_parser = step_arg, allow_hyphen_values = true)]
    pub tau: (f64, f64, f64),
    #[arg(long, default_value_t = 1e-10)]
    pub zero_tol: f64,
    /// Accuracy of the coarse |mu| grid.
    #[arg(long, default_value_t = 1e-6)]
    pub coarse_tol: f64,
    /// JSON-lines report.
    #[arg(long)]
    pub out: PathBuf,
    /// Heat map CSV (default: the report path with extension `heatmap.csv`).
    #[arg(long)]
    pub heatmap: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// delta_direct against the Volterra representation.
    Volterra(IdentityArgs),
    /// Both sides of the integral equation for t^{-1/2} delta.
    Prop1(IdentityArgs),
    /// Bounded-branch estimate t|psi - rho(w-1)/w t^{-i Im w}| <= bound.
    Lemma1(Lemma1Args),
    /// Half-to-half trend of |delta_line + t mu(1+i tau)|.
    Majoration(MajorationArgs),
    /// Observed Im-ratio against the two-term prediction.
    Ratio(RatioArgs),
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, value_parser = grid_arg)]
    pub t_grid: Grid,
    /// Pass threshold on |difference| / (1 + |delta|).
    #[arg(long, default_value_t = 1e-5)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct Lemma1Args {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w: Complex64,
    #[arg(long, value_parser = grid_arg)]
    pub t_grid: Grid,
    #[arg(long, default_value_t = 1e-9)]
    pub zero_tol: f64,
    /// Absolute slack added to the bound.
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct MajorationArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: f64,
    #[arg(long, value_parser = grid_arg)]
    pub t_grid: Grid,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub s: Complex64,
    #[arg(long, default_value_t = 1e4)]
    pub t_max: f64,
    /// Log-spaced intervals on [1, t_max].
    #[arg(long, default_value_t = 40)]
    pub points: usize,
    /// Pass threshold on the relative ratio error at the final t.
    #[arg(long, default_value_t = 0.1)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct RotationArgs {
    #[arg(long)]
    pub eta: String,
    #[arg(long = "T")]
    pub t: f64,
    /// Candidate rotation number (default: the estimate).
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub rho: Option<Complex64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Linear intervals of the hypothesis grid on [1, T].
    #[arg(long, default_value_t = 2000)]
    pub grid_points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Grid points parsed from a RANGE.
#[derive(Debug, Clone)]
pub struct Grid(pub Vec<f64>);

fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("bad number `{s}`"))
}

/// `A:B:N` gives N+1 linear points, `logA:B:N` N+1 log-spaced points.
pub fn range_arg(s: &str) -> Result<Vec<f64>, String> {
    let (log, body) = match s.strip_prefix("log") {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let parts: Vec<&str> = body.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("range `{s}` is not A:B:N"));
    }
    let (a, b) = (parse_f64(parts[0])?, parse_f64(parts[1])?);
    let n: usize = parts[2].trim().parse().map_err(|_| format!("bad point count `{}`", parts[2]))?;
    if !(a.is_finite() && b.is_finite()) || b < a || (n == 0 && a != b) || (n > 0 && a == b) {
        return Err(format!("range `{s}` needs A < B and N >= 1"));
    }
    if log && a <= 0.0 {
        return Err(format!("log range `{s}` needs A > 0"));
    }
    let pts = (0..=n)
        .map(|k| {
            if k == n {
                return b;
            }
            let f = k as f64 / n.max(1) as f64;
            if log {
                (a.ln() + f * (b.ln() - a.ln())).exp()
            } else {
                a + f * (b - a)
            }
        })
        .collect();
    Ok(pts)
}

fn grid_arg(s: &str) -> Result<Grid, String> {
    range_arg(s).map(Grid)
}

/// `A:B:STEP`
fn step_arg(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("`{s}` is not A:B:STEP"));
    }
    let (a, b, h) = (parse_f64(parts[0])?, parse_f64(parts[1])?, parse_f64(parts[2])?);
    if !(b >= a && h > 0.0) {
        return Err(format!("`{s}` needs A <= B and STEP > 0"));
    }
    Ok((a, b, h))
}

/// Expands `--config FILE` into flags appended after the command line,
/// skipping keys the command line already sets.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut config = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            config = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            config = Some(p.to_string());
        } else {
            out.push(a);
        }
    }
    let Some(path) = config else { return Ok(out) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let present: Vec<String> = out
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(format!("{path}:{}: expected `key = value`", no + 1))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim());
        if present.contains(&k) {
            continue;
        }
        match v {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ => out.push(format!("--{k}={v}")),
        }
    }
    Ok(out)
}
