use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma pole: argument {re}{im:+}i lies within {radius:e} of a non-positive integer")]
    Pole { re: f64, im: f64, radius: f64 },

    #[error("argument outside the validated box: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance: estimated error {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    #[error("degenerate parameter zero near {lambda}: |dD/dnu| = {derivative:e}")]
    DegenerateZero { lambda: f64, derivative: f64 },

    #[error("local expansion fit failed: {0}")]
    Fit(String),

    #[error("contour winding not integral: nearest-integer gap {gap:.3}")]
    Contour { gap: f64 },

    #[error("eigenvalue condition vanishes on a contour at {re}{im:+}i")]
    BoundaryRoot { re: f64, im: f64 },

    #[error("Newton iteration failed: {0}")]
    Convergence(String),

    #[error("coupling |z| = {magnitude} is below the localization threshold {threshold}")]
    TooSmallCoupling { magnitude: f64, threshold: f64 },

    #[error("ambiguous branch matching at r = {r}")]
    MatchAmbiguity { r: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("eigensolver failure: {0}")]
    Eigensolve(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
