//! Eigenvalues of the harmonic oscillator perturbed by an odd pair of point
//! interactions, `-y'' + (x^2/4 - 1/2) y + z (delta(x-b) - delta(x+b)) y = nu y`.
//!
//! The special-function layer ([`gamma`], [`weber`], [`quadrature`]) and the
//! eigenvalue condition ([`condition`]) are generic over the real scalar; the
//! zero finders, the spectrum solver and the finite-difference oracle work in
//! `f64`. The aliases below name the `f64` instances.

pub mod condition;
pub mod dzero;
pub mod error;
pub mod fd_oracle;
pub mod gamma;
pub mod quadrature;
pub mod scalar;
pub mod solver;
pub mod weber;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex scalar used throughout the solver.
pub type C64 = num_complex::Complex64;
/// Problem parameters in double precision.
pub type Params = condition::ProblemParams<f64>;
/// Coupling constant in double precision.
pub type Coupling = condition::Coupling<f64>;
/// Boundary data of the jump matrix in double precision.
pub type Boundary = condition::BoundaryData<f64>;
/// Value and derivatives of a Weber-equation solution in double precision.
pub type Eval = weber::EvalPair<f64>;

/// Crate version, recorded in output manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
