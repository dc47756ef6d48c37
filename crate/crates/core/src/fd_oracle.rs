//! Finite-difference discretisation of the perturbed Weber operator on `[-L, L]`
//! with Dirichlet ends, used as an independent check of the spectrum solver.
//!
//! The point interactions become diagonal weights `+z/h` and `-z/h` at the grid
//! nodes nearest `+b` and `-b`. The matrix is complex symmetric and tridiagonal;
//! its eigenvalues come from an implicit QL iteration with complex rotations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::condition::ProblemParams;
use crate::error::{Error, Result};

/// Truncation half-width `L` and number of interior nodes `n`; `h = 2L/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(rename = "L")]
    pub half_width: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, n: usize) -> Self {
        Self { half_width, n }
    }

    /// Default truncation `L = max(12, b + 5)`.
    pub fn for_b(b: f64, n: usize) -> Self {
        Self::new(12f64.max(b + 5.0), n)
    }

    pub fn h(&self) -> f64 {
        2.0 * self.half_width / (self.n as f64 + 1.0)
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 1.0) * self.h()
    }

    pub fn validate(&self, b: f64) -> Result<()> {
        if !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return Err(Error::Grid(format!("L must be positive, got {}", self.half_width)));
        }
        if self.n < 100 {
            return Err(Error::Grid(format!("need at least 100 interior points, got {}", self.n)));
        }
        if b / self.h() < 10.0 {
            return Err(Error::Grid(format!("b/h = {} < 10: interaction point under-resolved", b / self.h())));
        }
        if self.half_width < b + 5.0 {
            return Err(Error::Grid(format!("L = {} < b + 5", self.half_width)));
        }
        Ok(())
    }
}

/// Where the interaction points landed on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapInfo {
    pub index_plus: usize,
    pub index_minus: usize,
    /// Node position used for `+b`.
    pub b_snapped: f64,
    /// `b_snapped - b`, at most `h/2` in magnitude.
    pub offset: f64,
}

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i]` coupling nodes `i` and `i+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<Complex64>,
    pub off: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Row-major dense copy, for inspection and small tests.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.len();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdMatrix {
    pub matrix: Tridiagonal,
    pub snap: SnapInfo,
    pub grid: GridSpec,
}

pub fn build_matrix(p: &ProblemParams<f64>, g: &GridSpec) -> Result<FdMatrix> {
    g.validate(p.b)?;
    let h = g.h();
    let n = g.n;
    let inv_h2 = 1.0 / (h * h);
    let index_plus = (((p.b + g.half_width) / h) - 1.0).round().clamp(0.0, (n - 1) as f64) as usize;
    // the grid is symmetric about 0, so -b snaps to the mirror node
    let index_minus = n - 1 - index_plus;
    let mut diag: Vec<Complex64> = (0..n)
        .map(|i| {
            let x = g.node(i);
            Complex64::new(2.0 * inv_h2 + 0.25 * x * x - 0.5, 0.0)
        })
        .collect();
    let w = p.z() / h;
    diag[index_plus] += w;
    diag[index_minus] -= w;
    let off = vec![Complex64::new(-inv_h2, 0.0); n.saturating_sub(1)];
    let b_snapped = g.node(index_plus);
    Ok(FdMatrix {
        matrix: Tridiagonal { diag, off },
        snap: SnapInfo { index_plus, index_minus, b_snapped, offset: b_snapped - p.b },
        grid: *g,
    })
}

const QL_MAX_SWEEPS: usize = 60;

/// All eigenvalues of a complex symmetric tridiagonal matrix (implicit QL with Wilkinson-type shifts).
pub fn tridiagonal_eigenvalues(t: &Tridiagonal) -> Result<Vec<Complex64>> {
    let n = t.len();
    let mut d = t.diag.clone();
    let mut e: Vec<Complex64> = t.off.clone();
    e.push(Complex64::new(0.0, 0.0));
    let one = Complex64::new(1.0, 0.0);
    let eps = f64::EPSILON;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::Eigensolve(format!("no convergence for eigenvalue {l} after {QL_MAX_SWEEPS} sweeps")));
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] * 2.0);
            let mut r = (g * g + one).sqrt();
            // pick the sign of r that avoids cancellation in g + r
            let denom = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c, mut p) = (one, one, Complex64::new(0.0, 0.0));
            let mut early = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                let scale = f.norm() + g.norm();
                if scale == 0.0 {
                    d[i + 1] -= p;
                    e[m] = Complex64::new(0.0, 0.0);
                    early = true;
                    break;
                }
                if r.norm() <= 1e-14 * scale {
                    // complex orthogonal rotation is undefined when f^2 + g^2 = 0
                    return Err(Error::Eigensolve(format!("rotation breakdown at index {i}")));
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + c * b * 2.0;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = Complex64::new(0.0, 0.0);
        }
    }
    if d.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Eigensolve("non-finite eigenvalue".into()));
    }
    Ok(d)
}

/// Result of an oracle run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub eigenvalues: Vec<Complex64>,
    pub snap: SnapInfo,
    pub h: f64,
}

/// The `k` eigenvalues of lowest real part, sorted by real part.
///
/// Ranking by distance to the real axis would put off-axis pairs behind real
/// levels much higher up, so the selection is by real part alone.
pub fn oracle_spectrum(p: &ProblemParams<f64>, g: &GridSpec, k: usize) -> Result<OracleResult> {
    if k == 0 || k > 40 {
        return Err(Error::Grid(format!("k must lie in 1..=40, got {k}")));
    }
    let fd = build_matrix(p, g)?;
    let mut all = tridiagonal_eigenvalues(&fd.matrix)?;
    all.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    all.truncate(k);
    Ok(OracleResult { eigenvalues: all, snap: fd.snap, h: g.h() })
}
