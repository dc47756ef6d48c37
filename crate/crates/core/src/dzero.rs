//! Zeros `lambda` of `nu -> D_nu(b)` on the positive axis and the local data
//! that predicts where eigenvalues appear near them for large coupling.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condition::{integer_zero, m_direct};
use crate::error::{Error, Result};
use crate::weber::{nu_step, pcf_d};

/// Grid step of the sign-change scan.
pub const SCAN_STEP: f64 = 0.05;
/// Final bracket width of the bisection.
pub const BISECTION_WIDTH: f64 = 1e-13;
/// A zero is rejected as degenerate when `|dD/dnu|` does not exceed this.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;
/// Zeros within this distance of an integer are reported as integer zeros.
pub const INTEGER_SNAP: f64 = 1e-9;
/// Safety factor applied to the estimated bound `B` wherever it enters a threshold.
pub const B_SAFETY: f64 = 4.0;

const FIT_RADII: [f64; 2] = [0.01, 0.02];
const FIT_SAMPLES: usize = 64;
const FIT_TOLERANCE: f64 = 1e-4;
const RHO_LADDER: [f64; 7] = [0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.5];
const RHO_MIN: f64 = 1e-4;

/// Local factorisation `M(nu) = c2 (nu - lambda)^2 (1 + g(nu - lambda))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalExpansion {
    pub c2: f64,
    /// Estimate of `max |g'|` over the disc of radius `rho`.
    pub b_bound: f64,
    /// Radius on which `|g| <= 1/4`.
    pub rho: f64,
}

impl LocalExpansion {
    /// `delta = sqrt(c2) min(1/(6 B), rho/3)` with the safety factor applied to `B`.
    pub fn delta(&self) -> f64 {
        let b = B_SAFETY * self.b_bound;
        let first = if b > 0.0 { 1.0 / (6.0 * b) } else { f64::INFINITY };
        self.c2.sqrt() * first.min(self.rho / 3.0)
    }

    /// Smallest `|z|` for which the two-root localization is asserted.
    pub fn coupling_threshold(&self) -> f64 {
        1.0 / self.delta()
    }

    /// A square root `epsilon` of `1/(z^2 c2)`.
    pub fn epsilon(&self, z: Complex64) -> Complex64 {
        1.0 / (z * self.c2.sqrt())
    }

    /// Bound `3 B |epsilon|^2` on the seed error, with the safety factor applied.
    pub fn seed_error_bound(&self, z: Complex64) -> f64 {
        3.0 * B_SAFETY * self.b_bound * self.epsilon(z).norm_sqr()
    }
}

/// A zero of `nu -> D_nu(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DZeroInfo {
    pub lambda: f64,
    pub is_integer: bool,
    /// `dD_nu(b)/dnu` at `lambda`.
    pub d_deriv: f64,
    /// Filled in by [`local_expansion`].
    pub expansion: Option<LocalExpansion>,
}

fn d_real(nu: f64, b: f64) -> Result<f64> {
    Ok(pcf_d(Complex64::new(nu, 0.0), b)?.value.re)
}

fn d_deriv(nu: f64, b: f64) -> Result<f64> {
    let h = nu_step(Complex64::new(nu, 0.0));
    Ok((d_real(nu + h, b)? - d_real(nu - h, b)?) / (2.0 * h))
}

fn bisect(b: f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64> {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = d_real(mid, b)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton steps that are kept only while they reduce `|D|`.
fn polish(b: f64, mut x: f64) -> Result<(f64, f64)> {
    let mut fx = d_real(x, b)?;
    let mut dx = d_deriv(x, b)?;
    for _ in 0..4 {
        if fx == 0.0 || dx.abs() <= DEGENERACY_THRESHOLD {
            break;
        }
        let next = x - fx / dx;
        let f_next = d_real(next, b)?;
        if f_next.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = f_next;
        dx = d_deriv(x, b)?;
    }
    if dx.abs() <= DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateZero { lambda: x, derivative: dx.abs() });
    }
    Ok((x, dx))
}

fn refine(b: f64, lo: f64, hi: f64, f_lo: f64) -> Result<DZeroInfo> {
    let x = bisect(b, lo, hi, f_lo)?;
    let (mut lambda, d_deriv) = polish(b, x)?;
    let n = lambda.round();
    let is_integer = (lambda - n).abs() < INTEGER_SNAP && n >= 0.0 && integer_zero(n, b)?;
    if is_integer {
        lambda = n;
    }
    Ok(DZeroInfo { lambda, is_integer, d_deriv, expansion: None })
}

/// All zeros of `nu -> D_nu(b)` in `(0, nu_max]`, ascending.
pub fn find_d_zeros(b: f64, nu_max: f64) -> Result<Vec<DZeroInfo>> {
    if !(nu_max > 0.0 && nu_max <= 60.0) {
        return Err(Error::Range(format!("nu_max must lie in (0, 60], got {nu_max}")));
    }
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    let steps = (nu_max / SCAN_STEP).floor() as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| k as f64 * SCAN_STEP).collect();
    let values: Vec<f64> = grid.par_iter().map(|&nu| d_real(nu, b)).collect::<Result<_>>()?;

    let mut int_zeros = Vec::new();
    for n in 0..=(nu_max.floor() as usize) {
        if integer_zero(n as f64, b)? {
            int_zeros.push(n as f64);
        }
    }
    let touches_int_zero = |x: f64| int_zeros.iter().any(|&n| (x - n).abs() < 0.5 * SCAN_STEP);

    let mut brackets = Vec::new();
    for k in 0..steps {
        let (lo, hi) = (grid[k], grid[k + 1]);
        if touches_int_zero(lo) || touches_int_zero(hi) {
            continue;
        }
        if (values[k] > 0.0) != (values[k + 1] > 0.0) {
            brackets.push((lo, hi, values[k]));
        }
    }
    for &n in &int_zeros {
        let lo = n - SCAN_STEP;
        let hi = (n + SCAN_STEP).min(nu_max.max(n));
        brackets.push((lo, hi, d_real(lo, b)?));
    }

    let mut zeros: Vec<DZeroInfo> = brackets
        .par_iter()
        .map(|&(lo, hi, f_lo)| refine(b, lo, hi, f_lo))
        .collect::<Result<_>>()?;
    zeros.retain(|z| z.lambda > 0.0 && z.lambda <= nu_max);
    zeros.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    Ok(zeros)
}

/// Taylor coefficients `a_0..a_3` of `M` around `center` from samples on a circle.
fn cauchy_coefficients(center: f64, radius: f64, b: f64) -> Result<[Complex64; 4]> {
    let mut coef = [Complex64::new(0.0, 0.0); 4];
    for j in 0..FIT_SAMPLES {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / FIT_SAMPLES as f64;
        let w = Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta);
        let m = m_direct(w, b)?;
        for (k, c) in coef.iter_mut().enumerate() {
            *c += m * Complex64::from_polar(1.0, -theta * k as f64);
        }
    }
    for (k, c) in coef.iter_mut().enumerate() {
        *c /= FIT_SAMPLES as f64 * radius.powi(k as i32);
    }
    Ok(coef)
}

/// Distance from `lambda` to the nearest pole of `M`, i.e. the nearest
/// non-negative integer that is not itself a zero of `D`.
fn pole_distance(lambda: f64, b: f64) -> Result<f64> {
    let mut best = f64::INFINITY;
    let base = lambda.floor();
    for n in [base - 1.0, base, base + 1.0, base + 2.0] {
        if n < 0.0 || integer_zero(n, b)? {
            continue;
        }
        best = best.min((lambda - n).abs());
    }
    Ok(best)
}

fn g_on_circle(lambda: f64, c2: f64, b: f64, radius: f64) -> Result<Vec<(Complex64, Complex64)>> {
    (0..FIT_SAMPLES)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / FIT_SAMPLES as f64;
            let zeta = Complex64::from_polar(radius, theta);
            let g = g_at(lambda, c2, b, zeta)?;
            Ok((zeta, g))
        })
        .collect()
}

fn g_at(lambda: f64, c2: f64, b: f64, zeta: Complex64) -> Result<Complex64> {
    Ok(m_direct(Complex64::new(lambda, 0.0) + zeta, b)? / (zeta * zeta * c2) - 1.0)
}

/// Fits the local factorisation of `M` (or of its extension at an integer zero)
/// and fills in `c2`, `B` and `rho`.
pub fn local_expansion(zero: &DZeroInfo, b: f64) -> Result<DZeroInfo> {
    let lambda = zero.lambda;
    let poles = pole_distance(lambda, b)?;
    let shrink = if poles.is_finite() { (poles / (2.0 * FIT_RADII[1])).min(1.0) } else { 1.0 };
    let r1 = FIT_RADII[0] * shrink;
    let r2 = FIT_RADII[1] * shrink;
    let c_small = cauchy_coefficients(lambda, r1, b)?[2];
    let c_large = cauchy_coefficients(lambda, r2, b)?[2];
    let c2 = c_small.re;
    let drift = (c_small / c_large - 1.0).norm();
    if !(drift <= FIT_TOLERANCE) {
        return Err(Error::Fit(format!(
            "quadratic coefficient at lambda = {lambda} differs by {drift:e} between radii {r1} and {r2}"
        )));
    }
    if !(c2 > 0.0) {
        return Err(Error::Fit(format!("non-positive quadratic coefficient {c2:e} at lambda = {lambda}")));
    }

    let max_g = |r: f64| -> Result<f64> {
        Ok(g_on_circle(lambda, c2, b, r)?.iter().map(|(_, g)| g.norm()).fold(0.0, f64::max))
    };
    let limit = 0.9 * poles;
    let mut rho = None;
    for &r in RHO_LADDER.iter().rev() {
        if r < limit && max_g(r)? <= 0.25 {
            rho = Some(r);
            break;
        }
    }
    if rho.is_none() {
        let mut r = RHO_LADDER[0].min(0.5 * limit);
        while r >= RHO_MIN {
            if max_g(r)? <= 0.25 {
                rho = Some(r);
                break;
            }
            r *= 0.5;
        }
    }
    let rho = rho.ok_or_else(|| Error::Fit(format!("no radius with |g| <= 1/4 around lambda = {lambda}")))?;

    // g' is analytic on the disc, so its maximum modulus sits on the boundary circle
    let h = 1e-3 * rho;
    let mut b_bound = 0.0f64;
    for (zeta, _) in g_on_circle(lambda, c2, b, rho)? {
        let dir = zeta / zeta.norm();
        let plus = g_at(lambda, c2, b, zeta + dir * h)?;
        let minus = g_at(lambda, c2, b, zeta - dir * h)?;
        b_bound = b_bound.max(((plus - minus) / (dir * 2.0 * h)).norm());
    }

    Ok(DZeroInfo { expansion: Some(LocalExpansion { c2, b_bound, rho }), ..*zero })
}

/// [`find_d_zeros`] followed by [`local_expansion`] on each zero.
pub fn find_d_zeros_with_expansion(b: f64, nu_max: f64) -> Result<Vec<DZeroInfo>> {
    find_d_zeros(b, nu_max)?.par_iter().map(|z| local_expansion(z, b)).collect()
}
