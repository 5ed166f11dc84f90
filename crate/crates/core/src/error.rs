use num_complex::Complex64;
use thiserror::Error;

use crate::quadrature::QuadratureResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The rotation number hypothesis needs a non-zero rotation number.
    #[error("rotation number is zero; the rotation number hypothesis requires rho != 0")]
    ZeroRotation,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("tolerance {0:e} outside the supported range [1e-12, 1e-2]")]
    Tolerance(f64),

    #[error("quadrature failed after {panels} panels: error estimate {error:e} exceeds tolerance {tol:e}", panels = best.panels, error = best.error_estimate)]
    Quadrature { best: QuadratureResult, tol: f64 },

    #[error("tail budget {budget:e} unreachable for w = {w} (needs truncation beyond {cap:e})")]
    TailBudget { w: Complex64, budget: f64, cap: f64 },

    #[error("ODE integration failed at t = {t}: {reason}")]
    Ode { t: f64, reason: String },

    #[error("mu(w) is not numerically zero: |mu| = {mu_abs:e} > {zero_tol:e}")]
    MuNotZero { mu_abs: f64, zero_tol: f64 },

    #[error("Newton iteration failed: {reason} (last iterate {last})")]
    Newton { reason: String, last: Complex64, trace: Vec<Complex64> },

    #[error("winding number inconclusive: {0}")]
    Inconclusive(String),

    /// The computation would exceed a fixed memory or work cap.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Numerical failures as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. }
                | Error::TailBudget { .. }
                | Error::Ode { .. }
                | Error::MuNotZero { .. }
                | Error::Newton { .. }
                | Error::Inconclusive(_)
                | Error::Resource(_)
        )
    }
}

/// Rejects user tolerances outside `[1e-12, 1e-2]`.
pub fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && (1e-12..=1e-2).contains(&tol) {
        Ok(tol)
    } else {
        Err(Error::Tolerance(tol))
    }
}
