//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.
//!
//! The driver is globally adaptive: the panel with the largest error estimate
//! is bisected until the summed estimate meets the tolerance. Initial panels
//! come from caller-supplied breakpoints, so discontinuities of η (integers
//! for `frac`) never fall inside a panel.
//!
//! Kernels of the form u^{-1-w} are integrated after the substitution u = eˣ,
//! which turns them into e^{-w x}; initial panels are then at most 2π/|Im w|
//! wide so each carries less than one period of the phase.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::eta::EtaFunction;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Extra bisections allowed beyond the initial panel count.
const DEFAULT_EXTRA_PANELS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: Complex64,
    pub error: f64,
    resabs: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = WGK[7] * fc.norm();
    let mut fv = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kronrod += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j].0 - mean).norm() + (fv[j].1 - mean).norm());
    }
    let value = kronrod * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let raw = ((kronrod - gauss) * half).norm();
    let mut error = if resasc != 0.0 && raw != 0.0 {
        resasc * (200.0 * raw / resasc).powf(1.5).min(1.0)
    } else {
        raw
    };
    error += f64::EPSILON * resabs;
    if !error.is_finite() || !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value, error, resabs }
}

#[derive(PartialEq)]
struct ByError(f64, usize);
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Knobs for the adaptive driver.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Adaptive {
    pub tol: f64,
    /// Accept the round-off floor 50·ε·∫|f| when it exceeds `tol`.
    pub roundoff_floor: bool,
    pub extra_panels: usize,
}

impl Adaptive {
    pub fn new(tol: f64) -> Self {
        Self { tol, roundoff_floor: true, extra_panels: DEFAULT_EXTRA_PANELS }
    }

    pub fn strict(tol: f64) -> Self {
        Self { roundoff_floor: false, ..Self::new(tol) }
    }

    /// Integrates over consecutive `breaks` (sorted, endpoints included) and
    /// returns the total plus the final panel list sorted by left endpoint.
    pub fn run<F: Fn(f64) -> Complex64>(
        &self,
        f: F,
        breaks: &[f64],
    ) -> Result<(QuadratureResult, Vec<Panel>)> {
        let mut panels: Vec<Panel> = breaks
            .windows(2)
            .filter(|p| p[1] > p[0])
            .map(|p| gk15(&f, p[0], p[1]))
            .collect();
        if panels.is_empty() {
            let zero = QuadratureResult { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, panels: 0 };
            return Ok((zero, Vec::new()));
        }
        let max_panels = panels.len() + self.extra_panels;
        let mut heap: BinaryHeap<ByError> =
            panels.iter().enumerate().map(|(k, p)| ByError(p.error, k)).collect();
        let mut total_err: f64 = panels.iter().map(|p| p.error).sum();
        let resabs: f64 = panels.iter().map(|p| p.resabs).sum();
        let target = if self.roundoff_floor {
            self.tol.max(50.0 * f64::EPSILON * resabs)
        } else {
            self.tol
        };
        // Panels too narrow to split keep their error but leave the heap.
        let mut stuck_err = 0.0;
        let mut steps = 0usize;
        while total_err > target {
            let Some(ByError(_, k)) = heap.pop() else { break };
            let p = panels[k];
            let mid = 0.5 * (p.a + p.b);
            if panels.len() >= max_panels || !(mid > p.a && mid < p.b) || p.b - p.a < 1e-14 * (p.a.abs() + p.b.abs()) {
                if panels.len() >= max_panels {
                    heap.push(ByError(p.error, k));
                    break;
                }
                stuck_err += p.error;
                if stuck_err > target {
                    break;
                }
                continue;
            }
            let left = gk15(&f, p.a, mid);
            let right = gk15(&f, mid, p.b);
            total_err += left.error + right.error - p.error;
            panels[k] = left;
            heap.push(ByError(left.error, k));
            panels.push(right);
            heap.push(ByError(right.error, panels.len() - 1));
            steps += 1;
            if steps % 4096 == 0 {
                total_err = panels.iter().map(|p| p.error).sum();
            }
        }
        panels.sort_by(|x, y| x.a.total_cmp(&y.a));
        let value = panels.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
        let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
        let result = QuadratureResult { value, error_estimate, panels: panels.len() };
        if error_estimate <= target {
            Ok((result, panels))
        } else {
            Err(Error::Quadrature { best: result, tol: self.tol })
        }
    }
}

/// ∫ₐᵇ f with absolute error at most `tol` (1e-12 ≤ tol).
pub fn integrate_finite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(tol >= 1e-12) {
        return Err(Error::Tolerance(tol));
    }
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is not a finite ordered interval")));
    }
    Adaptive::strict(tol).run(f, &[a, b]).map(|r| r.0)
}

/// Like [`integrate_finite`] with initial panels split at `breaks`
/// (sorted, including both endpoints). Tolerances below the round-off floor
/// are raised to it.
pub fn integrate_with_breaks<F: Fn(f64) -> Complex64>(f: F, breaks: &[f64], tol: f64) -> Result<QuadratureResult> {
    Adaptive::new(tol).run(f, breaks).map(|r| r.0)
}

/// Weight attached to the Mellin kernel u^{-1-w}η(u).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// u^{-1-w}η(u)
    Plain,
    /// u^{-1-w}·ln(u)·η(u)
    Log,
}

/// Initial breakpoints in x = ln u for the kernel u^{-1-w} on [a, b].
pub(crate) fn log_breaks(eta: &EtaFunction, w: Complex64, a: f64, b: f64) -> Result<Vec<f64>> {
    let (xa, xb) = (a.ln(), b.ln());
    let mut xs: Vec<f64> = eta.breakpoints(a, b)?.into_iter().map(f64::ln).collect();
    let width = if w.im != 0.0 { (2.0 * PI / w.im.abs()).min(1.0) } else { 1.0 };
    let n = ((xb - xa) / width).ceil() as usize;
    xs.extend((1..n).map(|k| xa + (xb - xa) * k as f64 / n as f64));
    xs.push(xa);
    xs.push(xb);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|p, q| (*p - *q).abs() <= 1e-15 * (1.0 + q.abs()));
    Ok(xs)
}

/// ∫ₐᵇ u^{-1-w} η(u) du (or with an extra ln u factor), integrated in
/// x = ln u.
pub fn weighted_integral(
    eta: &EtaFunction,
    w: Complex64,
    a: f64,
    b: f64,
    weight: Weight,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(1.0 <= a && a <= b) {
        return Err(Error::Domain(format!("weighted integral needs 1 <= a <= b, got [{a}, {b}]")));
    }
    eta.check_domain(b)?;
    let breaks = log_breaks(eta, w, a, b)?;
    let f = |x: f64| {
        let v = (-w * x).exp() * eta.value(x.exp());
        match weight {
            Weight::Plain => v,
            Weight::Log => v * x,
        }
    };
    Adaptive::new(tol).run(f, &breaks).map(|r| r.0)
}

/// Cached cumulative integral C(t) = ∫₁ᵗ u^{-1-w} η(u) du on [1, t_max].
///
/// The whole range is integrated once; C at the final panel endpoints is a
/// prefix sum and any other t adds one short adaptive integral.
#[derive(Debug, Clone)]
pub struct CumulativeIntegral<'a> {
    eta: &'a EtaFunction,
    w: Complex64,
    knots: Vec<f64>,
    cum: Vec<Complex64>,
    t_max: f64,
    tol: f64,
    error: f64,
}

impl<'a> CumulativeIntegral<'a> {
    pub fn new(eta: &'a EtaFunction, w: Complex64, t_max: f64, tol: f64) -> Result<Self> {
        if !(t_max >= 1.0) {
            return Err(Error::Domain(format!("cumulative integral needs t_max >= 1, got {t_max}")));
        }
        eta.check_domain(t_max)?;
        let breaks = log_breaks(eta, w, 1.0, t_max)?;
        let f = |x: f64| (-w * x).exp() * eta.value(x.exp());
        let (res, panels) = Adaptive::new(tol).run(f, &breaks)?;
        let mut knots = Vec::with_capacity(panels.len() + 1);
        let mut cum = Vec::with_capacity(panels.len() + 1);
        knots.push(0.0);
        cum.push(Complex64::new(0.0, 0.0));
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &panels {
            acc += p.value;
            knots.push(p.b);
            cum.push(acc);
        }
        Ok(Self { eta, w, knots, cum, t_max, tol, error: res.error_estimate })
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Error estimate of the full-range integral; bounds every prefix.
    pub fn error_estimate(&self) -> f64 {
        self.error
    }

    pub fn at(&self, t: f64) -> Result<Complex64> {
        if !(t >= 1.0 && t <= self.t_max * (1.0 + 1e-14)) {
            return Err(Error::Domain(format!("t = {t} outside [1, {}]", self.t_max)));
        }
        let x = t.ln().min(*self.knots.last().unwrap());
        let k = match self.knots.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(k) => return Ok(self.cum[k]),
            Err(k) => k - 1,
        };
        let x0 = self.knots[k];
        let f = |y: f64| (-self.w * y).exp() * self.eta.value(y.exp());
        let piece = Adaptive::new(self.tol).run(f, &[x0, x])?.0;
        Ok(self.cum[k] + piece.value)
    }
}
