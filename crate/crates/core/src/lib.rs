//! Bounded solutions of the parametrized complex linear ODE
//! ẋ = Re(w)·t⁻¹x + (1−w)·t^{−1−i·Im w}·η(t) on [1, ∞), the boundedness
//! functional μ_η, its zeros in the critical strip, and the δ-Volterra
//! identities that link the strip to the line Re(w) = 1.

pub mod complex;
pub mod delta;
pub mod error;
pub mod eta;
pub mod mu;
pub mod ode;
pub mod parallel;
pub mod quadrature;
pub mod report;
pub mod solver;
pub mod tail;

pub use complex::{format_complex, parse_complex};
pub use error::{Error, Result};
pub use eta::EtaFunction;
pub use num_complex::Complex64;
pub use solver::StripPoint;

/// Runs the guide's code blocks as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/eta.md")]
    mod eta {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/zeros.md")]
    mod zeros {}
    #[doc = include_str!("../../../book/src/delta.md")]
    mod delta {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
