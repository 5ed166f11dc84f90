//! Complex literals and real-base powers.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parses `<re>[+|-]<im>i`, a bare real `<re>`, or a bare imaginary `<im>i`.
/// Decimal reals with optional exponents are accepted (`1e-3+2.5i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let err = || Error::Parse(format!("bad complex literal `{s}`"));
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| err())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Inverse of [`parse_complex`] using the shortest round-trip decimals.
pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// t^z for real t > 0 on the principal branch.
#[inline]
pub fn real_pow(t: f64, z: Complex64) -> Complex64 {
    let l = t.ln();
    Complex64::from_polar((z.re * l).exp(), z.im * l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let cases = [
            ("3-2i", Complex64::new(3.0, -2.0)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("-0.4i", Complex64::new(0.0, -0.4)),
            ("0.8-0.4i", Complex64::new(0.8, -0.4)),
            ("2+0i", Complex64::new(2.0, 0.0)),
            ("1", Complex64::new(1.0, 0.0)),
            ("-1.5", Complex64::new(-1.5, 0.0)),
            ("1e-3+2.5e1i", Complex64::new(1e-3, 25.0)),
            ("-2e-1-i", Complex64::new(-0.2, -1.0)),
            ("i", Complex64::new(0.0, 1.0)),
        ];
        for (s, z) in cases {
            assert_eq!(parse_complex(s).unwrap(), z, "{s}");
        }
        for bad in ["", "abc", "1+2", "1+2j", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [Complex64::new(0.1, -3.25), Complex64::new(-7.0, 1e-9), Complex64::new(2.0, 0.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn real_pow_matches_powc() {
        let z = Complex64::new(-1.3, 7.2);
        for t in [1.0, 2.5, 100.0] {
            let a = real_pow(t, z);
            let b = Complex64::new(t, 0.0).powc(z);
            assert!((a - b).norm() < 1e-13 * b.norm().max(1.0));
        }
    }
}
