#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strip_rigidity::EtaFunction;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ζ(s) for Re s > 0, s ≠ 1, by the accelerated alternating series
/// ζ(s) = −1/(d_n(1−2^{1−s}))·Σ_{k<n}(−1)^k(d_k − d_n)/(k+1)^s with
/// d_k = n·Σ_{i≤k}(n+i−1)!4^i/((n−i)!(2i)!).
pub fn zeta(s: Complex64) -> Complex64 {
    const N: usize = 80;
    let mut d = Vec::with_capacity(N + 1);
    let mut term = 1.0f64;
    let mut acc = term;
    d.push(acc);
    for i in 1..=N {
        let (n, i) = (N as f64, i as f64);
        term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[N];
    let mut sum = c(0.0, 0.0);
    for k in 0..N {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += (d[k] - dn) * sign * c((k + 1) as f64, 0.0).powc(-s);
    }
    let one = c(1.0, 0.0);
    -sum / (dn * (one - c(2.0, 0.0).powc(one - s)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random member of the const / osc / frac families.
pub fn random_eta(rng: &mut ChaCha8Rng, family: usize) -> EtaFunction {
    let z = |r: &mut ChaCha8Rng| c(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
    match family % 3 {
        0 => EtaFunction::constant(z(rng)),
        1 => {
            let rho = z(rng);
            let amp = z(rng);
            let omega = rng.gen_range(0.5..7.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            EtaFunction::oscillating(rho, amp, omega).unwrap()
        }
        _ => EtaFunction::frac(),
    }
}

pub fn int_grid(a: usize, b: usize) -> Vec<f64> {
    (a..=b).map(|n| n as f64).collect()
}
