//! Solutions ψ_{η,w} of ẋ = Re(w)·t⁻¹x + (1−w)·t^{−1−i·Im w}·η(t), x(1) = 1,
//! and the original θ of θ̇ = w·t⁻¹θ + t⁻¹η, θ(1) = 1/(1−w).
//!
//! Three evaluation paths are provided:
//!
//! * closed form ψ(t) = t^{Re w}[1 + (1−w)∫₁ᵗ u^{−1−w}η(u)du], valid for every
//!   w at finite t;
//! * bounded form ψ(t) = −(1−w)t^{Re w}∫_t^∞ u^{−1−w}η(u)du, equal to the
//!   closed form exactly when μ_η(w) = 0;
//! * adaptive Dormand–Prince integration of the ODE, independent of both.

use num_complex::Complex64;
use serde::Serialize;

use crate::complex::real_pow;
use crate::eta::EtaFunction;
use crate::error::{Error, Result};
use crate::mu::mu_eval;
use crate::ode::{self, OdeOptions};
use crate::quadrature::CumulativeIntegral;
use crate::tail::tail_integral;

/// Default tolerance under which |μ_η(w)| counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// A complex parameter w = σ + iτ with the region predicates used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripPoint {
    pub w: Complex64,
    pub sigma: f64,
    pub tau: f64,
}

impl StripPoint {
    pub fn new(w: Complex64) -> Self {
        Self { w, sigma: w.re, tau: w.im }
    }

    pub fn from_parts(sigma: f64, tau: f64) -> Self {
        Self::new(Complex64::new(sigma, tau))
    }

    /// Re(w) > 0.
    pub fn in_half_plane(&self) -> bool {
        self.sigma > 0.0
    }

    /// σ ∈ [0, 1], σ ≠ 1/2, τ ≠ 0.
    pub fn in_i(&self) -> bool {
        (0.0..=1.0).contains(&self.sigma) && self.sigma != 0.5 && self.tau != 0.0
    }

    /// σ ∈ (0, 1), σ ≠ 1/2, τ ≠ 0: the critical strip minus the critical
    /// line and the real axis.
    pub fn in_b(&self) -> bool {
        self.sigma > 0.0 && self.sigma < 1.0 && self.sigma != 0.5 && self.tau != 0.0
    }

    /// The reflection 1 − w̄ through the critical line.
    pub fn reflect(&self) -> Self {
        Self::new(Complex64::new(1.0, 0.0) - self.w.conj())
    }
}

impl From<Complex64> for StripPoint {
    fn from(w: Complex64) -> Self {
        Self::new(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub psi: Complex64,
    pub theta: Option<Complex64>,
    /// t^{-1/2}·ψ(t)
    pub x_half: Complex64,
}

/// ψ_{η,w} on [1, t_max] through one cached pass of the cumulative integral.
#[derive(Debug, Clone)]
pub struct PsiEvaluator<'a> {
    w: Complex64,
    cum: CumulativeIntegral<'a>,
}

impl<'a> PsiEvaluator<'a> {
    /// `tol` bounds the absolute error of ψ, relaxed to the quadrature
    /// round-off floor when t_max^{Re w} is large.
    pub fn new(eta: &'a EtaFunction, w: Complex64, t_max: f64, tol: f64) -> Result<Self> {
        let scale = (Complex64::new(1.0, 0.0) - w).norm().max(1e-300) * t_max.powf(w.re.max(0.0));
        let cum = CumulativeIntegral::new(eta, w, t_max, tol / scale)?;
        Ok(Self { w, cum })
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn at(&self, t: f64) -> Result<Complex64> {
        if t == 1.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let j = self.cum.at(t)?;
        Ok((Complex64::new(1.0, 0.0) + (Complex64::new(1.0, 0.0) - self.w) * j) * t.powf(self.w.re))
    }
}

/// ψ_{η,w}(t) from the closed form.
pub fn psi_closed_form(eta: &EtaFunction, w: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    check_t(eta, t)?;
    PsiEvaluator::new(eta, w.w, t, tol)?.at(t)
}

/// ψ and θ on an increasing grid with one pass over [1, max(grid)].
pub fn psi_trajectory(eta: &EtaFunction, w: StripPoint, grid: &[f64], tol: f64) -> Result<Vec<TrajectoryPoint>> {
    check_grid(eta, grid)?;
    let t_max = *grid.last().unwrap();
    let eval = PsiEvaluator::new(eta, w.w, t_max, tol)?;
    let one = Complex64::new(1.0, 0.0);
    let theta_ok = w.tau != 0.0 && w.w != one;
    grid.iter()
        .map(|&t| {
            let psi = eval.at(t)?;
            let theta = theta_ok.then(|| real_pow(t, Complex64::new(0.0, w.tau)) * psi / (one - w.w));
            Ok(TrajectoryPoint { t, psi, theta, x_half: psi / t.sqrt() })
        })
        .collect()
}

/// ψ_{η,w}(t) by integrating the ODE directly, with steps forced onto the
/// breakpoints of η.
pub fn psi_ode_oracle(eta: &EtaFunction, w: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    check_t(eta, t)?;
    let a = w.sigma;
    let forcing = Complex64::new(1.0, 0.0) - w.w;
    let kernel = Complex64::new(-1.0, -w.tau);
    let rhs = |s: f64, x: Complex64| x * (a / s) + forcing * real_pow(s, kernel) * eta.value(s);
    let stops = eta.breakpoints(1.0, t)?;
    let opts = OdeOptions { rtol: tol, atol: tol * 1e-2, ..OdeOptions::default() };
    ode::integrate(rhs, 1.0, Complex64::new(1.0, 0.0), t, &stops, opts)
}

/// ψ_{η,w}(t) = −(1−w)t^{Re w}∫_t^∞u^{−1−w}η(u)du, valid when μ_η(w) = 0.
///
/// Fails with [`Error::MuNotZero`] when |μ_η(w)| exceeds `zero_tol`.
pub fn psi_bounded_form(eta: &EtaFunction, w: StripPoint, t: f64, tol: f64, zero_tol: f64) -> Result<Complex64> {
    require_mu_zero(eta, w, zero_tol)?;
    check_t(eta, t)?;
    bounded_form_unchecked(eta, w, t, tol)
}

fn bounded_form_unchecked(eta: &EtaFunction, w: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    let one_minus_w = Complex64::new(1.0, 0.0) - w.w;
    let ta = t.powf(w.sigma);
    let budget = (tol / (one_minus_w.norm().max(1e-300) * ta)).max(1e-300);
    let tail = tail_integral(eta, w.w, t, budget)?;
    Ok(-one_minus_w * ta * tail.value)
}

pub(crate) fn require_mu_zero(eta: &EtaFunction, w: StripPoint, zero_tol: f64) -> Result<Complex64> {
    if !w.in_half_plane() {
        return Err(Error::Domain(format!("w = {} is not in the right half-plane", w.w)));
    }
    let mu_tol = (0.01 * zero_tol).clamp(1e-12, 1e-2);
    let mu = mu_eval(eta, w, mu_tol)?;
    if mu.value.norm() > zero_tol {
        return Err(Error::MuNotZero { mu_abs: mu.value.norm(), zero_tol });
    }
    Ok(mu.value)
}

/// θ(t) = t^{i·Im w}·ψ_{η,w}(t)/(1−w) for Im(w) ≠ 0, w ≠ 1.
pub fn theta_solution(eta: &EtaFunction, w: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if w.w == one {
        return Err(Error::Domain("theta is undefined at w = 1".into()));
    }
    if w.tau == 0.0 {
        return Err(Error::Domain(format!("theta needs Im(w) != 0, got w = {}", w.w)));
    }
    let psi = psi_closed_form(eta, w, t, tol)?;
    Ok(real_pow(t, Complex64::new(0.0, w.tau)) * psi / (one - w.w))
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    /// sup over the grid of t·|ψ(t) − ρ(w−1)/w·t^{−i·Im w}|
    pub sup: f64,
    /// 2c̃|1−w²|/(1+Re w)
    pub bound: f64,
    pub first_half_sup: f64,
    pub second_half_sup: f64,
    pub mu_abs: f64,
}

/// Grid supremum of t·|ψ_{η,w}(t) − ρ(w−1)/w·t^{−i·Im w}| with ψ from the
/// bounded form; requires μ_η(w) ≈ 0 and a non-zero rotation number.
pub fn lemma1_residual(eta: &EtaFunction, w: StripPoint, grid: &[f64], tol: f64, zero_tol: f64) -> Result<Lemma1Report> {
    let rho = eta.rotation_number()?;
    let mu = require_mu_zero(eta, w, zero_tol)?;
    check_grid(eta, grid)?;
    let one = Complex64::new(1.0, 0.0);
    let lead = rho * (w.w - one) / w.w;
    let values = grid
        .iter()
        .map(|&t| {
            let psi = bounded_form_unchecked(eta, w, t, tol / t)?;
            let target = lead * real_pow(t, Complex64::new(0.0, -w.tau));
            Ok(t * (psi - target).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let (first, second) = half_sups(&values);
    Ok(Lemma1Report {
        sup: first.max(second),
        bound: 2.0 * eta.deviation_bound() * (one - w.w * w.w).norm() / (1.0 + w.sigma),
        first_half_sup: first,
        second_half_sup: second,
        mu_abs: mu.norm(),
    })
}

pub(crate) fn half_sups(values: &[f64]) -> (f64, f64) {
    let half = values.len() / 2;
    let first = values[..half.max(1).min(values.len())].iter().copied().fold(0.0, f64::max);
    let second = values[half..].iter().copied().fold(0.0, f64::max);
    (first, second)
}

fn check_t(eta: &EtaFunction, t: f64) -> Result<()> {
    eta.check_domain(t)
}

pub(crate) fn check_grid(eta: &EtaFunction, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    if grid.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    eta.check_domain(grid[0])?;
    eta.check_domain(*grid.last().unwrap())
}
