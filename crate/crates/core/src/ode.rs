//! Dormand–Prince 5(4) for scalar complex ODEs ẏ = f(t, y).
//!
//! Integration restarts at every stop point so a right-hand side with jumps
//! (η = frac at the integers) is never stepped across a discontinuity.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, max_steps: 2_000_000 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b* (difference between the 5th and embedded 4th order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates from (t0, y0) to `t_end`, restarting at each of `stops`
/// inside (t0, t_end). Returns y(t_end).
pub fn integrate<F>(f: F, t0: f64, y0: Complex64, t_end: f64, stops: &[f64], opts: OdeOptions) -> Result<Complex64>
where
    F: Fn(f64, Complex64) -> Complex64,
{
    let mut knots: Vec<f64> = stops.iter().copied().filter(|&s| s > t0 && s < t_end).collect();
    knots.push(t_end);
    let mut t = t0;
    let mut y = y0;
    let mut steps = 0usize;
    for &target in &knots {
        y = segment(&f, t, y, target, opts, &mut steps)?;
        t = target;
    }
    Ok(y)
}

fn segment<F>(f: &F, t0: f64, y0: Complex64, t1: f64, opts: OdeOptions, steps: &mut usize) -> Result<Complex64>
where
    F: Fn(f64, Complex64) -> Complex64,
{
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(y0);
    }
    let mut t = t0;
    let mut y = y0;
    // f is only evaluated on [t0, t1): the segment is half-open.
    let mut k1 = f(t, y);
    let scale0 = opts.atol + opts.rtol * y.norm();
    let mut h = if k1.norm() > 0.0 {
        (0.01 * scale0 / k1.norm()).sqrt().min(span)
    } else {
        span.min(0.1 * span.max(1.0))
    };
    h = h.max(1e-6 * span);
    while t < t1 {
        if *steps >= opts.max_steps {
            return Err(Error::Ode { t, reason: format!("exceeded {} steps", opts.max_steps) });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, y + k1 * (h * A21));
        let k3 = f(t + C3 * h, y + (k1 * A31 + k2 * A32) * h);
        let k4 = f(t + C4 * h, y + (k1 * A41 + k2 * A42 + k3 * A43) * h);
        let k5 = f(t + C5 * h, y + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * h);
        // Stage 6 sits at t + h; nudge it inside the segment on the last step.
        let t6 = if last && t1 > 0.0 { f64::from_bits(t1.to_bits() - 1) } else { t + h };
        let k6 = f(t6, y + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * h);
        let y_new = y + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * h;
        let k7 = f(t6, y_new);
        let err = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * h;
        let sc = opts.atol + opts.rtol * y.norm().max(y_new.norm());
        let ratio = err.norm() / sc;
        *steps += 1;
        if ratio <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            k1 = k7;
            let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
        } else {
            h *= (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Ode { t, reason: "step size underflow".into() });
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let lam = Complex64::new(0.3, 2.0);
        let y = integrate(|_, y| lam * y, 0.0, Complex64::new(1.0, 0.0), 5.0, &[], OdeOptions::default()).unwrap();
        let exact = (lam * 5.0).exp();
        assert!((y - exact).norm() < 1e-8 * exact.norm());
    }

    #[test]
    fn discontinuous_forcing_with_stops() {
        // ẏ = frac(t); y(1) = 0 ⇒ y(n) = (n−1)/2 at integers.
        let stops: Vec<f64> = (2..20).map(|n| n as f64).collect();
        let y = integrate(|t, _| Complex64::new(t - t.floor(), 0.0), 1.0, Complex64::new(0.0, 0.0), 20.0, &stops, OdeOptions::default()).unwrap();
        assert!((y.re - 9.5).abs() < 1e-10);
    }

    #[test]
    fn step_budget_exhaustion_is_an_error() {
        let opts = OdeOptions { max_steps: 5, ..Default::default() };
        let r = integrate(|t, _| Complex64::new((50.0 * t).sin(), 0.0), 0.0, Complex64::new(0.0, 0.0), 100.0, &[], opts);
        assert!(matches!(r, Err(Error::Ode { .. })));
    }
}
