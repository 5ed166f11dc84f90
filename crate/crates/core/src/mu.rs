//! The Mellin-type function μ_η(w) = −1 − (1−w)∫₁^∞ u^{−1−w}η(u)du on
//! Re(w) > 0, its derivative, and zero location in the critical strip.
//!
//! μ_η(w) = 0 exactly when ψ_{η,w} stays bounded. For η = frac,
//! μ(s) = (1−s)ζ(s)/s, so zeros of μ in the strip are the non-trivial zeros
//! of ζ.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::eta::EtaFunction;
use crate::error::{check_tol, Error, Result};
use crate::parallel;
use crate::quadrature::Weight;
use crate::solver::StripPoint;
use crate::tail::{tail_integral_with, TailCertificate, TailOptions};

/// Points with |2σ − 1| below this are treated as lying on the critical line.
pub const CRITICAL_LINE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuResult {
    pub value: Complex64,
    /// Quadrature estimate plus certified tail bound, scaled by |1−w|.
    pub error: f64,
    pub certificate: TailCertificate,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// μ_η(w) with total error at most `tol`.
pub fn mu_eval(eta: &EtaFunction, w: StripPoint, tol: f64) -> Result<MuResult> {
    check_tol(tol)?;
    let scale = (one() - w.w).norm();
    let budget = tol / scale.max(tol);
    let tail = tail_integral_with(eta, w.w, 1.0, budget, Weight::Plain, TailOptions::default())?;
    Ok(MuResult {
        value: -one() - (one() - w.w) * tail.value,
        error: scale * tail.total_error(),
        certificate: tail.certificate,
    })
}

/// μ′_η(w) = ∫₁^∞u^{−1−w}η + (1−w)∫₁^∞u^{−1−w}ln(u)η.
pub fn mu_derivative(eta: &EtaFunction, w: StripPoint, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    let scale = (one() - w.w).norm();
    let opts = TailOptions::default();
    let j = tail_integral_with(eta, w.w, 1.0, 0.5 * tol, Weight::Plain, opts)?;
    let l = tail_integral_with(eta, w.w, 1.0, 0.5 * tol / scale.max(tol), Weight::Log, opts)?;
    Ok(j.value + (one() - w.w) * l.value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub location: Complex64,
    pub mu_abs: f64,
    /// Winding number of μ around a small rectangle; `None` when inconclusive.
    pub winding: Option<i32>,
    /// μ at the reflection 1 − s̄, when that point has positive real part.
    pub partner_value: Option<Complex64>,
    /// The pair (s, 1 − s̄) is not a pair of distinct simultaneous zeros.
    /// Always true on the critical line, where the reflection is s itself.
    pub partner_nonzero: bool,
    pub critical_line: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    pub location: Complex64,
    pub mu: Complex64,
    pub last_step: f64,
    pub iterations: usize,
    pub trace: Vec<Complex64>,
}

const MAX_HALVINGS: usize = 8;
const MIN_RE: f64 = 0.01;
/// Iterates beyond this modulus count as divergence.
const MAX_MODULUS: f64 = 1e6;

fn newton_mu_tol(zero_tol: f64) -> f64 {
    (0.01 * zero_tol).clamp(1e-12, 1e-2)
}

/// Damped Newton iteration on μ_η from `seed` until |μ| ≤ `zero_tol`.
pub fn newton(eta: &EtaFunction, seed: Complex64, zero_tol: f64, max_iter: usize) -> Result<NewtonOutcome> {
    if !(zero_tol > 0.0) {
        return Err(Error::Domain(format!("zero_tol must be positive, got {zero_tol}")));
    }
    if seed.re < MIN_RE {
        return Err(Error::Domain(format!("Newton seed {seed} has Re < {MIN_RE}")));
    }
    let mu_tol = newton_mu_tol(zero_tol);
    let eval = |z: Complex64| mu_eval(eta, StripPoint::new(z), mu_tol).map(|r| r.value);
    let mut z = seed;
    let mut m = eval(z)?;
    let mut trace = vec![z];
    let mut last_step = 0.0;
    let fail = |reason: String, last: Complex64, trace: Vec<Complex64>| Error::Newton { reason, last, trace };
    for it in 0..=max_iter {
        if m.norm() <= zero_tol {
            // One polishing step, kept only if it does not increase |μ|.
            if let Ok(d) = mu_derivative(eta, StripPoint::new(z), 1e-10) {
                if d.norm() > 0.0 {
                    let cand = z - m / d;
                    if cand.re >= MIN_RE {
                        if let Ok(mc) = eval(cand) {
                            if mc.norm() <= m.norm() {
                                last_step = (cand - z).norm();
                                z = cand;
                                m = mc;
                                trace.push(z);
                            }
                        }
                    }
                }
            }
            return Ok(NewtonOutcome { location: z, mu: m, last_step, iterations: it, trace });
        }
        if it == max_iter {
            break;
        }
        let d = mu_derivative(eta, StripPoint::new(z), 1e-10)?;
        if d.norm() == 0.0 {
            return Err(fail("vanishing derivative".into(), z, trace));
        }
        let step = -m / d;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let cand = z + step * lambda;
            if cand.re >= MIN_RE {
                let mc = eval(cand)?;
                if mc.norm() < m.norm() {
                    accepted = Some((cand, mc));
                    break;
                }
                accepted.get_or_insert((cand, mc));
            }
            lambda *= 0.5;
        }
        let Some((cand, mc)) = accepted else {
            return Err(fail(format!("iterate left Re(w) >= {MIN_RE}"), z + step, trace));
        };
        if cand.norm() > MAX_MODULUS {
            return Err(fail(format!("iterate diverged beyond |w| = {MAX_MODULUS:e}"), cand, trace));
        }
        last_step = (cand - z).norm();
        z = cand;
        m = mc;
        trace.push(z);
    }
    Err(fail(format!("no convergence in {max_iter} iterations (|mu| = {:e})", m.norm()), z, trace))
}

/// Newton from `seed`, then winding and partner certification.
pub fn find_zero_newton(eta: &EtaFunction, seed: Complex64, zero_tol: f64, max_iter: usize) -> Result<ZeroRecord> {
    let out = newton(eta, seed, zero_tol, max_iter)?;
    certify(eta, &out, zero_tol)
}

fn certify(eta: &EtaFunction, out: &NewtonOutcome, zero_tol: f64) -> Result<ZeroRecord> {
    let z = out.location;
    let mut half = (10.0 * out.last_step).clamp(1e-6, 0.05).min(0.5 * (z.re - MIN_RE).max(1e-7));
    let mut winding = None;
    for _ in 0..3 {
        let rect = Rect { sigma: (z.re - half, z.re + half), tau: (z.im - half, z.im + half) };
        match winding_number(eta, rect, 1e-12) {
            Ok(n) => {
                winding = Some(n);
                break;
            }
            Err(Error::Inconclusive(_)) => half = (half * 10.0).min(0.05),
            Err(e) => return Err(e),
        }
    }
    let critical_line = (2.0 * z.re - 1.0).abs() <= CRITICAL_LINE_TOL;
    let partner = one() - z.conj();
    let partner_value = if partner.re >= MIN_RE {
        Some(mu_eval(eta, StripPoint::new(partner), newton_mu_tol(zero_tol))?.value)
    } else {
        None
    };
    let partner_nonzero = critical_line || partner_value.map_or(true, |v| v.norm() > zero_tol);
    Ok(ZeroRecord {
        location: z,
        mu_abs: out.mu.norm(),
        winding,
        partner_value,
        partner_nonzero,
        critical_line,
        iterations: out.iterations,
    })
}

/// Axis-aligned rectangle [σ₀, σ₁] × [τ₀, τ₁].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub sigma: (f64, f64),
    pub tau: (f64, f64),
}

const MAX_EDGE_DEPTH: usize = 24;

/// Number of zeros of μ_η inside `rect` counted by the argument principle.
///
/// Each edge is refined until consecutive phase increments are below π/2.
/// Fails with [`Error::Inconclusive`] when |μ| ≤ 10·tol on the boundary.
pub fn winding_number(eta: &EtaFunction, rect: Rect, tol: f64) -> Result<i32> {
    check_tol(tol)?;
    let (s0, s1) = rect.sigma;
    let (t0, t1) = rect.tau;
    if !(s0 > 0.0 && s1 > s0 && t1 > t0) {
        return Err(Error::Domain(format!("invalid rectangle {rect:?}")));
    }
    let corners = [
        Complex64::new(s0, t0),
        Complex64::new(s1, t0),
        Complex64::new(s1, t1),
        Complex64::new(s0, t1),
    ];
    let eval = |z: Complex64| -> Result<Complex64> {
        let v = mu_eval(eta, StripPoint::new(z), tol)?.value;
        if v.norm() <= 10.0 * tol {
            return Err(Error::Inconclusive(format!("|mu({z})| = {:e} on the contour", v.norm())));
        }
        Ok(v)
    };
    let mut total = 0.0;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        const N: usize = 8;
        let pts: Vec<Complex64> = (0..=N).map(|j| a + (b - a) * (j as f64 / N as f64)).collect();
        let vals = pts.iter().map(|&z| eval(z)).collect::<Result<Vec<_>>>()?;
        for j in 0..N {
            total += edge_phase(&eval, pts[j], pts[j + 1], vals[j], vals[j + 1], 0)?;
        }
    }
    let turns = total / (2.0 * PI);
    let n = turns.round();
    if (turns - n).abs() > 0.05 {
        return Err(Error::Inconclusive(format!("phase sum {turns} turns is not near an integer")));
    }
    Ok(n as i32)
}

fn edge_phase<F>(eval: &F, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let d = (fb / fa).arg();
    if d.abs() < 0.5 * PI {
        return Ok(d);
    }
    if depth >= MAX_EDGE_DEPTH {
        return Err(Error::Inconclusive(format!("phase jump {d} unresolved between {a} and {b}")));
    }
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    Ok(edge_phase(eval, a, m, fa, fm, depth + 1)? + edge_phase(eval, m, b, fm, fb, depth + 1)?)
}

/// Minimum of |μ_η(1+iβ)| over a β grid (β = 0 skipped).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineCheck {
    pub min_abs: f64,
    pub argmin: f64,
}

pub fn check_line_hypothesis(eta: &EtaFunction, beta: (f64, f64), step: f64, tol: f64) -> Result<LineCheck> {
    check_tol(tol)?;
    let betas: Vec<f64> = grid(beta.0, beta.1, step)?.into_iter().filter(|b| *b != 0.0).collect();
    if betas.is_empty() {
        return Err(Error::Domain("no non-zero beta in range".into()));
    }
    let vals = parallel::map(&betas, |&b| mu_eval(eta, StripPoint::from_parts(1.0, b), tol).map(|r| r.value.norm()));
    let mut best = LineCheck { min_abs: f64::INFINITY, argmin: betas[0] };
    for (b, v) in betas.iter().zip(vals) {
        let v = v?;
        if v < best.min_abs {
            best = LineCheck { min_abs: v, argmin: *b };
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairStatus {
    pub s: Complex64,
    pub partner: Complex64,
    pub mu_s: Complex64,
    pub mu_partner: Complex64,
    pub s_is_zero: bool,
    pub partner_is_zero: bool,
}

impl PairStatus {
    /// Both s and 1 − s̄ are zeros.
    pub fn both_zero(&self) -> bool {
        self.s_is_zero && self.partner_is_zero
    }
}

/// μ at s ∈ B and at its reflection 1 − s̄.
pub fn check_pair(eta: &EtaFunction, s: StripPoint, zero_tol: f64) -> Result<PairStatus> {
    if !s.in_b() {
        return Err(Error::Domain(format!("s = {} is not in the strip minus the critical line and real axis", s.w)));
    }
    let tol = newton_mu_tol(zero_tol);
    let p = s.reflect();
    let mu_s = mu_eval(eta, s, tol)?.value;
    let mu_partner = mu_eval(eta, p, tol)?.value;
    Ok(PairStatus {
        s: s.w,
        partner: p.w,
        mu_s,
        mu_partner,
        s_is_zero: mu_s.norm() <= zero_tol,
        partner_is_zero: mu_partner.norm() <= zero_tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRegion {
    pub sigma: (f64, f64),
    pub tau: (f64, f64),
    pub sigma_step: f64,
    pub tau_step: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub zero_tol: f64,
    /// Accuracy of the coarse |μ| grid.
    pub coarse_tol: f64,
    /// Grid minima with |μ| above this are not used as Newton seeds.
    pub seed_threshold: f64,
    pub max_iter: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { zero_tol: 1e-10, coarse_tol: 1e-6, seed_threshold: 1.0, max_iter: 50 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSample {
    pub sigma: f64,
    pub tau: f64,
    pub abs_mu: f64,
}

/// A grid minimum whose Newton run did not yield a zero inside the region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub seed: Complex64,
    pub seed_abs_mu: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub eta_id: String,
    pub region: ScanRegion,
    pub zeros: Vec<ZeroRecord>,
    pub candidates: Vec<Candidate>,
    pub line_hypothesis_min: f64,
    pub line_hypothesis_argmin: f64,
    #[serde(skip)]
    pub grid: Vec<GridSample>,
}

/// Smallest σ a scan will sample.
pub const SCAN_SIGMA_FLOOR: f64 = 0.02;

/// Cap on coarse grid nodes in one scan.
pub const MAX_SCAN_POINTS: f64 = 4e6;

/// Coarse |μ| grid, Newton from local minima, dedupe and certify.
pub fn scan_strip(eta: &EtaFunction, region: ScanRegion, opts: ScanOptions) -> Result<ScanReport> {
    let (mut s_lo, s_hi) = region.sigma;
    if !(s_lo > 0.0 && s_hi < 1.0 && s_hi >= s_lo) {
        return Err(Error::Domain(format!("scan sigma range {:?} must lie inside (0, 1)", region.sigma)));
    }
    s_lo = s_lo.max(SCAN_SIGMA_FLOOR);
    if s_lo > s_hi {
        return Err(Error::Domain(format!("scan sigma range {:?} lies below {SCAN_SIGMA_FLOOR}", region.sigma)));
    }
    check_tol(opts.coarse_tol)?;
    let nodes = ((s_hi - s_lo) / region.sigma_step + 1.0) * ((region.tau.1 - region.tau.0) / region.tau_step + 1.0);
    if region.sigma_step > 0.0 && region.tau_step > 0.0 && nodes > MAX_SCAN_POINTS {
        return Err(Error::Resource(format!("scan grid of about {nodes:.3e} nodes exceeds {MAX_SCAN_POINTS:e}")));
    }
    let sigmas = grid(s_lo, s_hi, region.sigma_step)?;
    let taus = grid(region.tau.0, region.tau.1, region.tau_step)?;
    let (ns, nt) = (sigmas.len(), taus.len());
    let points: Vec<(f64, f64)> = taus.iter().flat_map(|&t| sigmas.iter().map(move |&s| (s, t))).collect();
    let vals = parallel::map(&points, |&(s, t)| {
        mu_eval(eta, StripPoint::from_parts(s, t), opts.coarse_tol).map(|r| r.value.norm())
    });
    let abs: Vec<f64> = vals.into_iter().collect::<Result<_>>()?;
    let at = |i: usize, j: usize| abs[j * ns + i];

    let mut seeds = Vec::new();
    for j in 0..nt {
        for i in 0..ns {
            let v = at(i, j);
            if v >= opts.seed_threshold {
                continue;
            }
            let mut is_min = true;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || ii < 0 || jj < 0 || ii >= ns as i64 || jj >= nt as i64 {
                        continue;
                    }
                    if at(ii as usize, jj as usize) < v {
                        is_min = false;
                    }
                }
            }
            if is_min {
                seeds.push((Complex64::new(sigmas[i], taus[j]), v));
            }
        }
    }

    let outcomes = parallel::map(&seeds, |&(z, _)| newton(eta, z, opts.zero_tol, opts.max_iter));
    let inside = |z: Complex64| {
        let pad = 1e-12;
        z.re >= s_lo - pad && z.re <= s_hi + pad && z.im >= region.tau.0 - pad && z.im <= region.tau.1 + pad
    };
    let mut located: Vec<NewtonOutcome> = Vec::new();
    let mut candidates = Vec::new();
    for ((seed, v), out) in seeds.iter().zip(outcomes) {
        match out {
            Ok(o) if inside(o.location) => {
                if !located.iter().any(|p| (p.location - o.location).norm() <= 10.0 * opts.zero_tol) {
                    located.push(o);
                }
            }
            Ok(o) => candidates.push(Candidate {
                seed: *seed,
                seed_abs_mu: *v,
                reason: format!("converged outside the region at {}", o.location),
            }),
            Err(e) if e.is_numerical() => {
                candidates.push(Candidate { seed: *seed, seed_abs_mu: *v, reason: e.to_string() })
            }
            Err(e) => return Err(e),
        }
    }
    let records = parallel::map(&located, |o| certify(eta, o, opts.zero_tol));
    let mut zeros: Vec<ZeroRecord> = records.into_iter().collect::<Result<_>>()?;
    zeros.sort_by(|a, b| a.location.im.total_cmp(&b.location.im).then(a.location.re.total_cmp(&b.location.re)));

    let line = check_line_hypothesis(eta, region.tau, region.tau_step, opts.coarse_tol)?;
    let grid_samples = points.iter().zip(&abs).map(|(&(sigma, tau), &abs_mu)| GridSample { sigma, tau, abs_mu }).collect();
    Ok(ScanReport {
        eta_id: eta.id().to_string(),
        region: ScanRegion { sigma: (s_lo, s_hi), ..region },
        zeros,
        candidates,
        line_hypothesis_min: line.min_abs,
        line_hypothesis_argmin: line.argmin,
        grid: grid_samples,
    })
}

/// lo, lo+step, … up to hi inclusive (within rounding).
fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Domain(format!("bad grid {lo}:{hi} step {step}")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| lo + step * k as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sp(re: f64, im: f64) -> StripPoint {
        StripPoint::new(c(re, im))
    }

    #[test]
    fn constant_examples() {
        let zero = EtaFunction::parse("const:0").unwrap();
        assert_eq!(mu_eval(&zero, sp(0.5, 3.0), 1e-10).unwrap().value, c(-1.0, 0.0));
        let one_eta = EtaFunction::constant(c(1.0, 0.0));
        let v = mu_eval(&one_eta, sp(1.0, 1.0), 1e-12).unwrap().value;
        assert!((v + c(1.0, 0.0) / c(1.0, 1.0)).norm() < 1e-12);
        assert_abs_diff_eq!(v.norm(), 0.7071067811865476, epsilon = 1e-12);
        let two = EtaFunction::constant(c(2.0, 0.0));
        assert!(mu_eval(&two, sp(2.0, 0.0), 1e-12).unwrap().value.norm() < 1e-12);
        let e = EtaFunction::parse("const:2i").unwrap();
        assert!(mu_eval(&e, sp(0.8, -0.4), 1e-12).unwrap().value.norm() < 1e-12);
    }

    #[test]
    fn frac_at_two() {
        let f = EtaFunction::frac();
        let r = mu_eval(&f, sp(2.0, 0.0), 1e-10).unwrap();
        assert_abs_diff_eq!(r.value.re, -PI * PI / 12.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.value.im, 0.0, epsilon = 1e-12);
        assert!(r.error <= 1e-10);
    }

    #[test]
    fn domain_and_tolerance() {
        let f = EtaFunction::frac();
        assert!(matches!(mu_eval(&f, sp(0.0, 3.0), 1e-8), Err(Error::Domain(_))));
        assert!(matches!(mu_eval(&f, sp(0.5, 3.0), 1e-14), Err(Error::Tolerance(_))));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        for (eta, w) in [(EtaFunction::frac(), sp(0.4, 9.0)), (EtaFunction::parse("osc:1,0.5,2").unwrap(), sp(1.3, -2.0))] {
            let d = mu_derivative(&eta, w, 1e-11).unwrap();
            let h = 1e-4;
            let p = mu_eval(&eta, sp(w.sigma + h, w.tau), 1e-12).unwrap().value;
            let m = mu_eval(&eta, sp(w.sigma - h, w.tau), 1e-12).unwrap().value;
            let fd = (p - m) / (2.0 * h);
            assert!((d - fd).norm() < 1e-6, "{d} vs {fd}");
        }
    }

    #[test]
    fn newton_on_constant_eta() {
        let e = EtaFunction::parse("const:2i").unwrap();
        let z = find_zero_newton(&e, c(0.7, -0.3), 1e-10, 50).unwrap();
        assert!((z.location - c(0.8, -0.4)).norm() < 1e-9);
        assert_eq!(z.winding, Some(1));
        assert!(!z.critical_line);
        assert!(z.partner_nonzero);
        assert!(z.partner_value.unwrap().norm() > 0.1);
    }

    #[test]
    fn newton_failure_reports_trace() {
        let zero = EtaFunction::parse("const:0").unwrap();
        match find_zero_newton(&zero, c(0.5, 3.0), 1e-10, 5) {
            Err(Error::Newton { trace, .. }) => assert!(!trace.is_empty()),
            other => panic!("expected Newton failure, got {other:?}"),
        }
    }

    #[test]
    fn winding_of_constant_eta() {
        let e = EtaFunction::parse("const:2i").unwrap();
        let r = Rect { sigma: (0.6, 1.0), tau: (-0.6, -0.2) };
        assert_eq!(winding_number(&e, r, 1e-10).unwrap(), 1);
        let r = Rect { sigma: (0.1, 0.5), tau: (1.0, 2.0) };
        assert_eq!(winding_number(&e, r, 1e-10).unwrap(), 0);
    }

    #[test]
    fn pair_check() {
        let e = EtaFunction::parse("const:2i").unwrap();
        let p = check_pair(&e, sp(0.8, -0.4), 1e-9).unwrap();
        assert!(p.s_is_zero && !p.partner_is_zero && !p.both_zero());
        assert!((p.partner - c(0.2, -0.4)).norm() < 1e-15);
        assert!(check_pair(&e, sp(0.5, 1.0), 1e-9).is_err());
    }

    #[test]
    fn line_hypothesis_for_frac() {
        let f = EtaFunction::frac();
        let lc = check_line_hypothesis(&f, (-5.0, 5.0), 0.5, 1e-8).unwrap();
        assert!(lc.min_abs > 0.0);
        assert!(lc.argmin != 0.0);
    }

    #[test]
    fn grid_is_inclusive() {
        assert_eq!(grid(0.1, 0.9, 0.2).unwrap().len(), 5);
        assert_eq!(grid(12.0, 26.0, 0.25).unwrap().len(), 57);
    }
}
