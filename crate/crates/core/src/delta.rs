//! δ_{η,s}(t) = (ψ_{η,s}(t) − ψ_{η,1−s̄}(t))/(2σ−1) and the identities that
//! tie it to the line function δ_{η,1+iτ} = ψ_{η,1+iτ} − ψ_{η,iτ}.
//!
//! Every δ here is built from the closed form of ψ at finite t, so no
//! infinite tail enters, including at the boundary point iτ.

use std::cell::RefCell;

use num_complex::Complex64;
use serde::Serialize;

use crate::eta::EtaFunction;
use crate::error::{Error, Result};
use crate::mu::mu_eval;
use crate::quadrature::{log_breaks, Adaptive};
use crate::solver::{check_grid, half_sups, PsiEvaluator, StripPoint};

/// Imaginary parts of δ_line below this flag a ratio sample as unreliable.
pub const FLAG_THRESHOLD: f64 = 1e-12;

fn inner_tol(tol: f64) -> f64 {
    (1e-3 * tol).max(1e-15)
}

/// Cached δ_{η,s} on [1, t_max] for σ ∈ [0, 1] \ {1/2}.
#[derive(Debug, Clone)]
pub struct DeltaEvaluator<'a> {
    s: StripPoint,
    psi_s: PsiEvaluator<'a>,
    psi_p: PsiEvaluator<'a>,
    denom: f64,
}

impl<'a> DeltaEvaluator<'a> {
    pub fn new(eta: &'a EtaFunction, s: StripPoint, t_max: f64, tol: f64) -> Result<Self> {
        if !s.in_i() {
            return Err(Error::Domain(format!("delta needs 0 <= sigma <= 1, sigma != 1/2, tau != 0; got s = {}", s.w)));
        }
        eta.check_domain(t_max)?;
        let it = inner_tol(tol);
        Ok(Self {
            s,
            psi_s: PsiEvaluator::new(eta, s.w, t_max, it)?,
            psi_p: PsiEvaluator::new(eta, s.reflect().w, t_max, it)?,
            denom: 2.0 * s.sigma - 1.0,
        })
    }

    /// δ_{η,1+iτ}, the line function.
    pub fn line(eta: &'a EtaFunction, tau: f64, t_max: f64, tol: f64) -> Result<Self> {
        Self::new(eta, StripPoint::from_parts(1.0, tau), t_max, tol)
    }

    pub fn point(&self) -> StripPoint {
        self.s
    }

    pub fn at(&self, t: f64) -> Result<Complex64> {
        Ok((self.psi_s.at(t)? - self.psi_p.at(t)?) / self.denom)
    }
}

fn require_open_strip(s: StripPoint) -> Result<()> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(format!("sigma must lie in (0, 1), got s = {}", s.w)));
    }
    if s.sigma == 0.5 {
        return Err(Error::Domain("delta is undefined on the critical line sigma = 1/2".into()));
    }
    if s.tau == 0.0 {
        return Err(Error::Domain(format!("delta needs Im(s) != 0, got s = {}", s.w)));
    }
    Ok(())
}

/// δ_{η,s}(t) from its definition.
pub fn delta_direct(eta: &EtaFunction, s: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    require_open_strip(s)?;
    DeltaEvaluator::new(eta, s, t, tol)?.at(t)
}

/// δ_{η,1+iτ}(t) = ψ_{η,1+iτ}(t) − ψ_{η,iτ}(t).
pub fn delta_line(eta: &EtaFunction, tau: f64, t: f64, tol: f64) -> Result<Complex64> {
    if tau == 0.0 {
        return Err(Error::Domain("line delta needs tau != 0".into()));
    }
    DeltaEvaluator::line(eta, tau, t, tol)?.at(t)
}

/// Adaptive quadrature over x = ln v ∈ [0, ln t] of an integrand that may fail.
fn log_integral<F>(eta: &EtaFunction, w: Complex64, t: f64, tol: f64, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if t == 1.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let failure = RefCell::new(None);
    let g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let breaks = log_breaks(eta, w, 1.0, t)?;
    let res = Adaptive::new(tol).run(g, &breaks);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(res?.0.value)
}

/// δ_{η,s}(t) through the Volterra representation driven by δ_{η,1+iτ}:
/// δ_s(t) = δ_L(t) − σ(1−σ)/(2σ−1)·∫₁ᵗ[(t/v)^σ − (t/v)^{1−σ}]v⁻¹δ_L(v)dv.
pub fn delta_volterra(eta: &EtaFunction, s: StripPoint, t: f64, tol: f64) -> Result<Complex64> {
    require_open_strip(s)?;
    let line = DeltaEvaluator::line(eta, s.tau, t, tol)?;
    let (sig, l) = (s.sigma, t.ln());
    let integral = log_integral(eta, Complex64::new(0.0, s.tau), t, tol, |x| {
        let d = l - x;
        Ok(line.at(x.exp())? * ((sig * d).exp() - ((1.0 - sig) * d).exp()))
    })?;
    Ok(line.at(t)? - integral * (sig * (1.0 - sig) / (2.0 * sig - 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prop1Report {
    /// t^{−1/2}δ_{η,s}(t)
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// Both sides of the integral equation for t^{−1/2}δ_{η,s}:
///
/// ```text
/// t^{−1/2}δ_s(t) = (σ−½)²∫₁ᵗ v^{−3/2}δ_s(v)·ln(t/v)dv + ln t
///                + (½−iτ)∫₁ᵗ v^{−3/2−iτ}η(v)·ln(t/v)dv − ∫₁ᵗ u^{−3/2−iτ}η(u)du.
/// ```
///
/// Iterated integrals ∫₁ᵗu⁻¹∫₁ᵘ g are written as single integrals of g·ln(t/v).
pub fn prop1_residual(eta: &EtaFunction, s: StripPoint, t: f64, tol: f64) -> Result<Prop1Report> {
    require_open_strip(s)?;
    let ds = DeltaEvaluator::new(eta, s, t, tol)?;
    let l = t.ln();
    let shift = Complex64::new(0.5, s.tau);
    let it = inner_tol(tol).max(1e-13);
    let a = log_integral(eta, Complex64::new(0.0, s.tau), t, it, |x| Ok(ds.at(x.exp())? * ((-0.5 * x).exp() * (l - x))))?;
    let b = log_integral(eta, shift, t, it, |x| Ok((-shift * x).exp() * eta.value(x.exp()) * (l - x)))?;
    let c = log_integral(eta, shift, t, it, |x| Ok((-shift * x).exp() * eta.value(x.exp())))?;
    let lhs = ds.at(t)? / t.sqrt();
    let half_minus = Complex64::new(0.5, -s.tau);
    let rhs = a * (s.sigma - 0.5).powi(2) + l + half_minus * b - c;
    Ok(Prop1Report { lhs, rhs, residual: (lhs - rhs).norm() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorationSample {
    pub t: f64,
    pub delta_line: Complex64,
    /// |δ_line(t) + t·μ_η(1+iτ)|
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorationReport {
    pub tau: f64,
    pub mu_line: Complex64,
    pub grid: Vec<f64>,
    pub samples: Vec<MajorationSample>,
    pub sup_value: f64,
    /// Second-half sup over first-half sup.
    pub trend: f64,
}

/// sup over `grid` of |δ_{η,1+iτ}(t) + t·μ_η(1+iτ)| with its half-to-half trend.
pub fn majoration_check(eta: &EtaFunction, tau: f64, grid: &[f64], tol: f64) -> Result<MajorationReport> {
    if tau == 0.0 {
        return Err(Error::Domain("majoration needs tau != 0".into()));
    }
    check_grid(eta, grid)?;
    let t_max = *grid.last().unwrap();
    let mu = mu_eval(eta, StripPoint::from_parts(1.0, tau), (tol / t_max).max(1e-12))?.value;
    let line = DeltaEvaluator::line(eta, tau, t_max, tol)?;
    let samples = crate::parallel::map(grid, |&t| {
        let d = line.at(t)?;
        Ok(MajorationSample { t, delta_line: d, deviation: (d + mu * t).norm() })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let devs: Vec<f64> = samples.iter().map(|s| s.deviation).collect();
    let (first, second) = half_sups(&devs);
    Ok(MajorationReport {
        tau,
        mu_line: mu,
        grid: grid.to_vec(),
        samples,
        sup_value: first.max(second),
        trend: second / first,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaSample {
    pub t: f64,
    pub delta_s: Complex64,
    pub delta_line: Complex64,
    pub ratio_observed: f64,
    pub ratio_predicted: f64,
    pub oscillation_coeff: Complex64,
    /// |Im δ_line(t)| < 1e−12, so the observed ratio is meaningless.
    pub flagged: bool,
}

/// σ/((2σ−1)t^{1−σ}) − (1−σ)/((2σ−1)t^σ).
pub fn ratio_predicted(sigma: f64, t: f64) -> f64 {
    let d = 2.0 * sigma - 1.0;
    sigma / (d * t.powf(1.0 - sigma)) - (1.0 - sigma) / (d * t.powf(sigma))
}

/// ω_s = ρ((s−1)/s + s̄/(1−s̄)).
pub fn oscillation_coeff(rho: Complex64, s: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    rho * ((s - one) / s + s.conj() / (one - s.conj()))
}

/// Observed Im δ_s / Im δ_line against the two-term prediction on a t grid.
pub fn ratio_series(eta: &EtaFunction, s: StripPoint, grid: &[f64], tol: f64) -> Result<Vec<DeltaSample>> {
    require_open_strip(s)?;
    check_grid(eta, grid)?;
    let mu_line = mu_eval(eta, StripPoint::from_parts(1.0, s.tau), 1e-10)?.value;
    if mu_line.im.abs() <= 1e-6 {
        return Err(Error::Domain(format!(
            "ratio asymptotics need |Im mu(1+i tau)| > 1e-6, got {:e}",
            mu_line.im.abs()
        )));
    }
    let t_max = *grid.last().unwrap();
    let line = DeltaEvaluator::line(eta, s.tau, t_max, tol)?;
    let ds = DeltaEvaluator::new(eta, s, t_max, tol)?;
    let omega = oscillation_coeff(eta.rho(), s.w);
    crate::parallel::map(grid, |&t| {
        let delta_s = ds.at(t)?;
        let delta_line = line.at(t)?;
        let flagged = delta_line.im.abs() < FLAG_THRESHOLD;
        Ok(DeltaSample {
            t,
            delta_s,
            delta_line,
            ratio_observed: if flagged { f64::NAN } else { delta_s.im / delta_line.im },
            ratio_predicted: ratio_predicted(s.sigma, t),
            oscillation_coeff: omega,
            flagged,
        })
    })
    .into_iter()
    .collect()
}
