//! Catalog of admissible non-homogeneous terms η and numerical checks of the
//! rotation number hypothesis.
//!
//! An [`EtaFunction`] is immutable after construction. The built-ins are
//!
//! * `const:<ρ>`: η ≡ ρ,
//! * `osc:<ρ>,<A>,<ω>`: η(t) = ρ + A·e^{iωt}, ω ≠ 0,
//! * `frac`: η(t) = t − ⌊t⌋, rotation number 1/2,
//! * `file:<path>`: samples read from a `t,re,im` CSV, linearly interpolated,
//!   finite horizon.
//!
//! Built-ins also carry a *primitive tower*: zero-mean bounded functions
//! g₁ = η − ρ, g₂, g₃, … with g_{k+1}' = g_k and known sup bounds. The tail
//! machinery in [`crate::tail`] integrates by parts along this tower.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::complex::parse_complex;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, QuadratureResult};

/// Highest primitive order exposed for the periodic built-ins.
pub const MAX_PRIMITIVE_ORDER: usize = 40;

#[derive(Debug, Clone)]
enum Kind {
    Const,
    Osc { amp: Complex64, omega: f64 },
    Frac,
    Sampled(Arc<Samples>),
}

#[derive(Debug)]
struct Samples {
    t: Vec<f64>,
    v: Vec<Complex64>,
}

/// A bounded, locally integrable η: [1, ∞) → ℂ together with its rotation
/// number ρ, the sup bound c ≥ |η| and the deviation bound
/// c̃ ≥ sup_t |∫₁ᵗ (η − ρ)|.
#[derive(Debug, Clone)]
pub struct EtaFunction {
    id: String,
    kind: Kind,
    rho: Complex64,
    sup_bound: f64,
    deviation_bound: f64,
    horizon: f64,
    real_valued: bool,
}

impl EtaFunction {
    /// Parses the mini-grammar `const:<c>`, `osc:<c>,<c>,<r>`, `frac`,
    /// `file:<path>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "frac" {
            return Ok(Self::frac());
        }
        let (head, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown eta spec `{spec}`")))?;
        match head {
            "const" => Ok(Self::constant(parse_complex(rest)?)),
            "osc" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(format!(
                        "osc expects `osc:<rho>,<amp>,<omega>`, got `{spec}`"
                    )));
                }
                let rho = parse_complex(parts[0])?;
                let amp = parse_complex(parts[1])?;
                let omega: f64 = parts[2]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad omega `{}`", parts[2])))?;
                Self::oscillating(rho, amp, omega)
            }
            "file" => Self::from_csv(rest),
            _ => Err(Error::Parse(format!("unknown eta spec `{spec}`"))),
        }
    }

    pub fn constant(rho: Complex64) -> Self {
        Self {
            id: format!("const:{}", crate::complex::format_complex(rho)),
            kind: Kind::Const,
            rho,
            sup_bound: rho.norm(),
            deviation_bound: 0.0,
            horizon: f64::INFINITY,
            real_valued: rho.im == 0.0,
        }
    }

    pub fn oscillating(rho: Complex64, amp: Complex64, omega: f64) -> Result<Self> {
        if omega == 0.0 || !omega.is_finite() {
            return Err(Error::Parse("osc requires a finite, non-zero omega".into()));
        }
        Ok(Self {
            id: format!(
                "osc:{},{},{}",
                crate::complex::format_complex(rho),
                crate::complex::format_complex(amp),
                omega
            ),
            kind: Kind::Osc { amp, omega },
            rho,
            sup_bound: rho.norm() + amp.norm(),
            deviation_bound: 2.0 * amp.norm() / omega.abs(),
            horizon: f64::INFINITY,
            real_valued: amp == Complex64::new(0.0, 0.0) && rho.im == 0.0,
        })
    }

    pub fn frac() -> Self {
        Self {
            id: "frac".into(),
            kind: Kind::Frac,
            rho: Complex64::new(0.5, 0.0),
            sup_bound: 1.0,
            deviation_bound: 0.125,
            horizon: f64::INFINITY,
            real_valued: true,
        }
    }

    /// Builds a sampled η from knots `t` (strictly increasing, starting at 1)
    /// and values `v`. The rotation number is the horizon average and the
    /// deviation bound the knot supremum of the deviation integral.
    pub fn from_samples(id: impl Into<String>, t: Vec<f64>, v: Vec<Complex64>) -> Result<Self> {
        if t.len() < 2 || t.len() != v.len() {
            return Err(Error::Parse("sampled eta needs at least two (t, value) rows".into()));
        }
        if (t[0] - 1.0).abs() > 1e-12 {
            return Err(Error::Parse(format!("sampled eta must start at t = 1, got {}", t[0])));
        }
        if t.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::Parse("sample times must be strictly increasing".into()));
        }
        let horizon = *t.last().unwrap();
        let mut cum = vec![Complex64::new(0.0, 0.0); t.len()];
        for k in 1..t.len() {
            cum[k] = cum[k - 1] + (v[k] + v[k - 1]) * (0.5 * (t[k] - t[k - 1]));
        }
        let rho = cum[t.len() - 1] / (horizon - 1.0);
        let deviation_bound = t
            .iter()
            .zip(&cum)
            .map(|(&tk, &ck)| (ck - rho * (tk - 1.0)).norm())
            .fold(0.0, f64::max);
        let sup_bound = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let real_valued = v.iter().all(|z| z.im == 0.0);
        Ok(Self {
            id: id.into(),
            kind: Kind::Sampled(Arc::new(Samples { t, v })),
            rho,
            sup_bound,
            deviation_bound,
            horizon,
            real_valued,
        })
    }

    /// Reads a `t,re,im` CSV.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
        let headers = rdr.headers()?.clone();
        let expected = ["t", "re", "im"];
        if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
            return Err(Error::Parse(format!(
                "{}: header must be `t,re,im`",
                path.display()
            )));
        }
        let mut t = Vec::new();
        let mut v = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let num = |i: usize| -> Result<f64> {
                rec[i]
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("{}: bad number `{}`", path.display(), &rec[i])))
            };
            t.push(num(0)?);
            v.push(Complex64::new(num(1)?, num(2)?));
        }
        Self::from_samples(format!("file:{}", path.display()), t, v)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// The stored rotation number, which may be zero (e.g. `const:0`).
    pub fn rho(&self) -> Complex64 {
        self.rho
    }

    /// The rotation number, rejecting ρ = 0 as required by the hypothesis.
    pub fn rotation_number(&self) -> Result<Complex64> {
        if self.rho == Complex64::new(0.0, 0.0) {
            Err(Error::ZeroRotation)
        } else {
            Ok(self.rho)
        }
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    pub fn deviation_bound(&self) -> f64 {
        self.deviation_bound
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn has_infinite_horizon(&self) -> bool {
        self.horizon.is_infinite()
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn is_frac(&self) -> bool {
        matches!(self.kind, Kind::Frac)
    }

    /// η(t) with domain checks.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        self.check_domain(t)?;
        Ok(self.value(t))
    }

    pub(crate) fn check_domain(&self, t: f64) -> Result<()> {
        if !(t >= 1.0) {
            return Err(Error::Domain(format!("eta evaluated at t = {t} < 1")));
        }
        if t > self.horizon * (1.0 + 1e-14) {
            return Err(Error::Domain(format!(
                "t = {t} beyond the horizon {} of {}",
                self.horizon, self.id
            )));
        }
        Ok(())
    }

    /// η(t) without domain checks; callers guarantee 1 ≤ t ≤ horizon.
    pub(crate) fn value(&self, t: f64) -> Complex64 {
        match &self.kind {
            Kind::Const => self.rho,
            Kind::Osc { amp, omega } => self.rho + amp * Complex64::cis(omega * t),
            Kind::Frac => Complex64::new(t - t.floor(), 0.0),
            Kind::Sampled(s) => s.interpolate(t),
        }
    }

    /// F(t) = ∫₁ᵗ (η(u) − ρ) du in closed form, when known.
    pub fn deviation_antiderivative(&self, t: f64) -> Option<Complex64> {
        match &self.kind {
            Kind::Const => Some(Complex64::new(0.0, 0.0)),
            Kind::Osc { amp, omega } => Some(
                amp * (Complex64::cis(omega * t) - Complex64::cis(*omega))
                    / Complex64::new(0.0, *omega),
            ),
            Kind::Frac => {
                let x = t - t.floor();
                Some(Complex64::new(0.5 * (x * x - x), 0.0))
            }
            Kind::Sampled(_) => None,
        }
    }

    /// Points in the open interval (a, b) where panels should be split:
    /// integers for `frac`, period multiples for `osc`, knots for sampled η.
    /// Fails with [`Error::Resource`] past [`MAX_BREAKPOINTS`] points.
    pub fn breakpoints(&self, a: f64, b: f64) -> Result<Vec<f64>> {
        let pts = match &self.kind {
            Kind::Const => Vec::new(),
            Kind::Frac => {
                let first = a.floor() + 1.0;
                let last = b.ceil() - 1.0;
                check_breakpoint_count(last - first + 1.0, a, b)?;
                let (first, last) = (first as i64, last as i64);
                (first..=last).map(|n| n as f64).filter(|&n| n > a && n < b).collect()
            }
            Kind::Osc { omega, .. } => {
                let period = 2.0 * PI / omega.abs();
                let first = ((a - 1.0) / period).floor() + 1.0;
                let last = ((b - 1.0) / period).ceil() - 1.0;
                check_breakpoint_count(last - first + 1.0, a, b)?;
                let (first, last) = (first as i64, last as i64);
                (first..=last)
                    .map(|k| 1.0 + k as f64 * period)
                    .filter(|&p| p > a && p < b)
                    .collect()
            }
            Kind::Sampled(s) => s.t.iter().copied().filter(|&p| p > a && p < b).collect(),
        };
        Ok(pts)
    }

    /// Number of orders of the primitive tower available (0 for sampled η).
    pub fn primitive_order(&self) -> usize {
        match self.kind {
            Kind::Sampled(_) => 0,
            _ => MAX_PRIMITIVE_ORDER,
        }
    }

    /// g_k(t) for 1 ≤ k ≤ [`primitive_order`](Self::primitive_order), where
    /// g₁ = η − ρ and g_{k+1} is the zero-mean primitive of g_k.
    pub fn primitive(&self, k: usize, t: f64) -> Complex64 {
        debug_assert!(k >= 1 && k <= self.primitive_order());
        match &self.kind {
            Kind::Const => Complex64::new(0.0, 0.0),
            Kind::Osc { amp, omega } => {
                amp * Complex64::cis(omega * t) / Complex64::new(0.0, *omega).powi(k as i32 - 1)
            }
            Kind::Frac => Complex64::new(bernoulli_periodic(k, t - t.floor()), 0.0),
            Kind::Sampled(_) => unreachable!("sampled eta has no primitive tower"),
        }
    }

    /// Rigorous bound on sup |g_k|.
    pub fn primitive_sup(&self, k: usize) -> f64 {
        match &self.kind {
            Kind::Const => 0.0,
            Kind::Osc { amp, omega } => amp.norm() / omega.abs().powi(k as i32 - 1),
            Kind::Frac => {
                if k == 1 {
                    0.5
                } else {
                    // Fourier series of the periodic Bernoulli functions:
                    // |B̃_k/k!| ≤ 2ζ(k)/(2π)^k, with ζ(k) ≤ 1 + 2^-k + 2^(1-k)/(k-1).
                    let kf = k as f64;
                    let zeta_bound = 1.0 + 2f64.powf(-kf) + 2f64.powf(1.0 - kf) / (kf - 1.0);
                    2.0 * zeta_bound / (2.0 * PI).powi(k as i32)
                }
            }
            Kind::Sampled(_) => f64::INFINITY,
        }
    }
}

impl Samples {
    fn interpolate(&self, t: f64) -> Complex64 {
        let n = self.t.len();
        let k = match self.t.binary_search_by(|p| p.partial_cmp(&t).unwrap()) {
            Ok(k) => return self.v[k],
            Err(0) => return self.v[0],
            Err(k) if k >= n => return self.v[n - 1],
            Err(k) => k,
        };
        let (t0, t1) = (self.t[k - 1], self.t[k]);
        let s = (t - t0) / (t1 - t0);
        self.v[k - 1] * (1.0 - s) + self.v[k] * s
    }
}

/// Coefficients B_j / j! of x/(eˣ − 1), j = 0..=MAX_PRIMITIVE_ORDER.
fn bernoulli_over_factorial() -> &'static [f64] {
    use std::sync::OnceLock;
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let n = MAX_PRIMITIVE_ORDER + 1;
        let mut inv_fact = vec![1.0; n + 2];
        for k in 1..n + 2 {
            inv_fact[k] = inv_fact[k - 1] / k as f64;
        }
        let mut a = vec![0.0; n];
        a[0] = 1.0;
        for m in 1..n {
            let s: f64 = (0..m).map(|j| a[j] * inv_fact[m + 1 - j]).sum();
            a[m] = -s;
        }
        // Odd Bernoulli numbers beyond B_1 vanish; clear the round-off.
        for (j, x) in a.iter_mut().enumerate() {
            if j > 1 && j % 2 == 1 {
                *x = 0.0;
            }
        }
        a
    })
}

/// B_k(x)/k! for x ∈ [0, 1).
pub(crate) fn bernoulli_periodic(k: usize, x: f64) -> f64 {
    let a = bernoulli_over_factorial();
    // Σ_{m=0}^{k} a_{k-m} x^m / m!
    let mut acc = 0.0;
    let mut term = 1.0;
    for m in 0..=k {
        if m > 0 {
            term *= x / m as f64;
        }
        acc += a[k - m] * term;
    }
    acc
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RotationEstimate {
    pub rho_estimate: Complex64,
    /// deviation_bound/(T−1) plus the quadrature error share.
    pub error_bound: f64,
}

/// Averages η over [1, T]; converges to ρ at rate c̃/(T−1).
pub fn rotation_estimate(eta: &EtaFunction, t_end: f64, tol: f64) -> Result<RotationEstimate> {
    if !(t_end > 1.0) {
        return Err(Error::Domain(format!("rotation estimate needs T > 1, got {t_end}")));
    }
    eta.check_domain(t_end)?;
    let q = integrate_eta(eta, Complex64::new(0.0, 0.0), 1.0, t_end, tol * (t_end - 1.0))?;
    let span = t_end - 1.0;
    Ok(RotationEstimate {
        rho_estimate: q.value / span,
        error_bound: eta.deviation_bound() / span + q.error_estimate / span,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    /// sup over the grid of |∫₁ᵗ (η − ρ)|.
    pub sup: f64,
    pub first_half_sup: f64,
    pub second_half_sup: f64,
    /// second_half_sup / first_half_sup; ≫ 1 signals unbounded growth.
    pub trend: f64,
}

/// Grid check of the rotation number hypothesis for a candidate ρ.
pub fn hypothesis_check(
    eta: &EtaFunction,
    rho_candidate: Complex64,
    grid: &[f64],
    tol: f64,
) -> Result<HypothesisReport> {
    if grid.is_empty() {
        return Err(Error::Domain("hypothesis check needs a non-empty grid".into()));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    eta.check_domain(grid[0])?;
    eta.check_domain(*grid.last().unwrap())?;
    let per_piece = tol / grid.len() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = 1.0;
    let mut values = Vec::with_capacity(grid.len());
    for &t in grid {
        if t > prev {
            acc += integrate_eta(eta, rho_candidate, prev, t, per_piece)?.value;
        }
        prev = t;
        values.push(acc.norm());
    }
    let half = values.len() / 2;
    let first = values[..half.max(1)].iter().copied().fold(0.0, f64::max);
    let second = values[half..].iter().copied().fold(0.0, f64::max);
    let sup = first.max(second);
    let trend = if first > 0.0 {
        second / first
    } else if second > 0.0 {
        f64::INFINITY
    } else {
        1.0
    };
    Ok(HypothesisReport { sup, first_half_sup: first, second_half_sup: second, trend })
}

/// Cap on breakpoints in one range; each becomes at least one quadrature panel.
pub const MAX_BREAKPOINTS: usize = 20_000_000;

fn check_breakpoint_count(count: f64, a: f64, b: f64) -> Result<()> {
    if count > MAX_BREAKPOINTS as f64 {
        return Err(Error::Resource(format!(
            "[{a}, {b}] holds about {count:.3e} breakpoints of eta (cap {MAX_BREAKPOINTS})"
        )));
    }
    Ok(())
}

/// ∫ₐᵇ (η(u) − shift) du with panels split at the η breakpoints.
pub(crate) fn integrate_eta(
    eta: &EtaFunction,
    shift: Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let mut breaks = vec![a];
    breaks.extend(eta.breakpoints(a, b)?);
    breaks.push(b);
    integrate_with_breaks(|u| eta.value(u) - shift, &breaks, tol.max(1e-15))
}
