//! Solutions of the Weber equation `-y'' + (x^2/4 - 1/2) y = nu y`.
//!
//! The even and odd solutions are summed from their Taylor series at the
//! origin; `D_nu` is assembled from them using its initial data at `x = 0`,
//! written with reciprocal Gamma factors so that integer `nu` needs no special
//! casing. The integral representations of `D_nu` are evaluated by adaptive
//! quadrature and serve as an independent check of the series route.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma_real, recip_gamma};
use crate::quadrature::{integrate, QuadOptions};
use crate::scalar::{is_finite, real, Real};

/// Value and `x`-derivative of a Weber solution at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPair<T> {
    pub value: Complex<T>,
    pub dx: Complex<T>,
}

impl<T: Real> EvalPair<T> {
    pub fn new(value: Complex<T>, dx: Complex<T>) -> Self {
        Self { value, dx }
    }

    /// Wronskian `self * other' - self' * other`.
    pub fn wronskian(&self, other: &EvalPair<T>) -> Complex<T> {
        self.value * other.dx - self.dx * other.value
    }
}

/// The two customary parametrisations of the Weber equation:
/// `nu` (eigenvalue form) and `a` (with `a = -nu - 1/2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamConvention {
    NuForm,
    AForm,
}

/// Converts a parameter given in convention `from` into the other convention.
///
/// The map `p -> -p - 1/2` is its own inverse, so the direction only matters
/// for readability at call sites.
pub fn convert_parameter<T: Real>(p: Complex<T>, from: ParamConvention) -> Complex<T> {
    let _ = from;
    -p - T::lit(0.5)
}

/// Truncation rule and validated evaluation box for the series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOptions<T> {
    /// Relative size below which a term counts as negligible.
    pub eps: T,
    pub max_terms: usize,
    pub x_max: T,
    pub nu_max: T,
}

impl<T: Real> Default for SeriesOptions<T> {
    fn default() -> Self {
        Self {
            eps: T::lit(1e-17),
            max_terms: 2000,
            x_max: T::lit(30.0),
            nu_max: T::lit(60.0),
        }
    }
}

fn check_box<T: Real>(nu: Complex<T>, x: T, opts: &SeriesOptions<T>) -> Result<()> {
    if !is_finite(nu) || !x.is_finite() {
        return Err(Error::Range(format!("non-finite input nu = {nu}, x = {x}")));
    }
    if x.abs() > opts.x_max {
        return Err(Error::Range(format!(
            "|x| = {} exceeds {}",
            x.abs(),
            opts.x_max
        )));
    }
    if nu.norm() > opts.nu_max {
        return Err(Error::Range(format!(
            "|nu| = {} exceeds {}",
            nu.norm(),
            opts.nu_max
        )));
    }
    Ok(())
}

/// Sums the bracketed power series of the even (`odd = false`) or odd solution
/// and its termwise derivative, then applies the `exp(-x^2/4)` envelope.
fn parity_series<T: Real>(nu: Complex<T>, x: T, odd: bool, opts: &SeriesOptions<T>) -> EvalPair<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let x2 = x * x;
    let mnu = -nu;
    let tiny = T::lit(1e-300).max(T::min_positive_value());

    let (mut term, mut sum, mut dsum) = if odd {
        (real(x), real(x), real(T::one()))
    } else {
        (real(T::one()), real(T::one()), zero)
    };

    let mut quiet = 0usize;
    for k in 1..opts.max_terms {
        let kk = T::lit(k as f64);
        let two_k = kk + kk;
        let (dterm, next) = if odd {
            let a = (mnu + (two_k - T::one())) * term;
            (a * (x / two_k), a * (x2 / (two_k * (two_k + T::one()))))
        } else {
            let a = (mnu + (two_k - T::lit(2.0))) * term;
            (
                a * (x / (two_k - T::one())),
                a * (x2 / ((two_k - T::one()) * two_k)),
            )
        };
        term = next;
        sum = sum + term;
        dsum = dsum + dterm;
        let small = term.norm() < opts.eps * (sum.norm() + tiny)
            && dterm.norm() < opts.eps * (dsum.norm() + tiny);
        if small {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }

    let env = (-x2 * T::lit(0.25)).exp();
    EvalPair {
        value: sum * env,
        dx: (dsum - sum * (x * T::lit(0.5))) * env,
    }
}

/// Even solution with `y(0) = 1`, `y'(0) = 0`.
pub fn even_sol<T: Real>(nu: Complex<T>, x: T) -> Result<EvalPair<T>> {
    even_sol_with(nu, x, &SeriesOptions::default())
}

pub fn even_sol_with<T: Real>(
    nu: Complex<T>,
    x: T,
    opts: &SeriesOptions<T>,
) -> Result<EvalPair<T>> {
    check_box(nu, x, opts)?;
    Ok(parity_series(nu, x, false, opts))
}

/// Odd solution with `y(0) = 0`, `y'(0) = 1`.
pub fn odd_sol<T: Real>(nu: Complex<T>, x: T) -> Result<EvalPair<T>> {
    odd_sol_with(nu, x, &SeriesOptions::default())
}

pub fn odd_sol_with<T: Real>(nu: Complex<T>, x: T, opts: &SeriesOptions<T>) -> Result<EvalPair<T>> {
    check_box(nu, x, opts)?;
    Ok(parity_series(nu, x, true, opts))
}

/// `(D_nu(0), D_nu'(0))`, the coefficients of the even/odd decomposition.
pub fn pcf_d_at_origin<T: Real>(nu: Complex<T>) -> EvalPair<T> {
    let half = T::lit(0.5);
    let sqrt_pi = T::PI().sqrt();
    let ln2 = T::LN_2();
    let pow_even = (nu * (half * ln2)).exp();
    let pow_odd = ((nu + T::one()) * (half * ln2)).exp();
    let value = pow_even * recip_gamma(real(half) - nu * half) * sqrt_pi;
    let dx = -pow_odd * recip_gamma(-nu * half) * sqrt_pi;
    EvalPair { value, dx }
}

/// All three solutions at one point: `(y_even, y_odd, D_nu)`.
pub fn weber_triple<T: Real>(
    nu: Complex<T>,
    x: T,
) -> Result<(EvalPair<T>, EvalPair<T>, EvalPair<T>)> {
    weber_triple_with(nu, x, &SeriesOptions::default())
}

pub fn weber_triple_with<T: Real>(
    nu: Complex<T>,
    x: T,
    opts: &SeriesOptions<T>,
) -> Result<(EvalPair<T>, EvalPair<T>, EvalPair<T>)> {
    check_box(nu, x, opts)?;
    let ye = parity_series(nu, x, false, opts);
    let yo = parity_series(nu, x, true, opts);
    let origin = pcf_d_at_origin(nu);
    let d = EvalPair {
        value: origin.value * ye.value + origin.dx * yo.value,
        dx: origin.value * ye.dx + origin.dx * yo.dx,
    };
    Ok((ye, yo, d))
}

/// The parabolic cylinder function `D_nu(x)` and its `x`-derivative.
pub fn pcf_d<T: Real>(nu: Complex<T>, x: T) -> Result<EvalPair<T>> {
    Ok(weber_triple(nu, x)?.2)
}

pub fn pcf_d_with<T: Real>(nu: Complex<T>, x: T, opts: &SeriesOptions<T>) -> Result<EvalPair<T>> {
    Ok(weber_triple_with(nu, x, opts)?.2)
}

/// Step used for `nu`-derivatives by central differences.
pub fn nu_step<T: Real>(nu: Complex<T>) -> T {
    T::lit(1e-6) * T::one().max(nu.norm())
}

/// `dD_nu(x)/dnu` by a complex central difference.
pub fn pcf_d_dnu<T: Real>(nu: Complex<T>, x: T) -> Result<Complex<T>> {
    let h = nu_step(nu);
    let plus = pcf_d(nu + h, x)?.value;
    let minus = pcf_d(nu - h, x)?.value;
    Ok((plus - minus) / (h + h))
}

/// Which integral representation [`pcf_d_integral_formula`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralFormula {
    /// `e^{-x^2/4}/Gamma(-nu) * int_0^inf t^{-nu-1} e^{-t^2/2 - x t} dt`, valid for `Re nu < 0`.
    Laplace,
    /// `sqrt(2/pi) e^{x^2/4} int_0^inf e^{-t^2/2} cos(pi nu/2 - x t) t^nu dt`, valid for `Re nu > -1`.
    Cosine,
}

/// Cut-off `T` with `exp(-T^2/2) T^(p+1) < 1e-18`.
fn gaussian_cutoff<T: Real>(power: T) -> T {
    let target = T::lit(1e-18).ln();
    let mut t = T::one();
    loop {
        let log_tail = -t * t * T::lit(0.5) + (power + T::one()) * t.ln();
        if log_tail < target {
            return t;
        }
        t = t + T::lit(0.5);
    }
}

/// Integer `m >= 1` such that substituting `t = s^m` removes the
/// `t^exponent` singularity at the origin (`Re exponent > -1`).
fn smoothing_power<T: Real>(exponent_re: T) -> i32 {
    if exponent_re >= T::zero() {
        1
    } else {
        let m = (T::one() / (exponent_re + T::one())).ceil();
        m.to_i32().unwrap_or(1).max(1)
    }
}

/// `int_0^upper t^power * kernel(t) dt` with the origin singularity removed by `t = s^m`.
fn power_integral<T: Real, K>(power: Complex<T>, upper: T, kernel: K) -> Result<Complex<T>>
where
    K: Fn(T) -> Complex<T>,
{
    let m = smoothing_power(power.re);
    let mf = T::lit(m as f64);
    let s_upper = upper.powf(T::one() / mf);
    let exponent = power * mf + (mf - T::one());
    let integrand = |s: T| {
        let t = s.powi(m);
        (exponent * s.ln()).exp() * kernel(t) * mf
    };
    integrate(integrand, T::zero(), s_upper, &QuadOptions::default())
}

/// `D_nu(x)` from an integral representation, chosen by the sign of `Re nu`.
pub fn pcf_d_integral<T: Real>(nu: Complex<T>, x: T) -> Result<Complex<T>> {
    let formula = if nu.re < T::zero() {
        IntegralFormula::Laplace
    } else {
        IntegralFormula::Cosine
    };
    pcf_d_integral_formula(nu, x, formula)
}

pub fn pcf_d_integral_formula<T: Real>(
    nu: Complex<T>,
    x: T,
    formula: IntegralFormula,
) -> Result<Complex<T>> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "integral representation needs x > 0, got {x}"
        )));
    }
    if !is_finite(nu) {
        return Err(Error::Domain(format!("non-finite nu = {nu}")));
    }
    let half = T::lit(0.5);
    match formula {
        IntegralFormula::Laplace => {
            if !(nu.re < T::zero()) {
                return Err(Error::Domain(format!(
                    "Laplace form needs Re nu < 0, got {nu}"
                )));
            }
            let power = -nu - T::one();
            let upper = gaussian_cutoff(nu.re.abs());
            let integral = power_integral(power, upper, |t| real((-t * t * half - x * t).exp()))?;
            Ok(integral * recip_gamma(-nu) * (-x * x * T::lit(0.25)).exp())
        }
        IntegralFormula::Cosine => {
            if !(nu.re > -T::one()) {
                return Err(Error::Domain(format!(
                    "cosine form needs Re nu > -1, got {nu}"
                )));
            }
            let phase = nu * (T::PI() * half);
            let upper = gaussian_cutoff(nu.re.abs());
            let integral =
                power_integral(nu, upper, |t| (phase - x * t).cos() * (-t * t * half).exp())?;
            Ok(integral * (T::lit(2.0) / T::PI()).sqrt() * (x * x * T::lit(0.25)).exp())
        }
    }
}

/// `ln D_{-xi}(x)` for `xi > 0`, `x >= 0`, evaluated in log space from the
/// Laplace-type integral. Works far outside the series box (`xi` in the hundreds).
pub fn ln_pcf_d_negative<T: Real>(xi: T, x: T) -> Result<T> {
    if !(xi > T::zero()) || !(x >= T::zero()) || !xi.is_finite() || !x.is_finite() {
        return Err(Error::Domain(format!(
            "ln_pcf_d_negative needs xi > 0, x >= 0; got xi = {xi}, x = {x}"
        )));
    }
    let half = T::lit(0.5);
    let a = xi - T::one();
    // exponent phi(t) = a ln t - t^2/2 - x t, peaked at t_star when a > 0
    let phi = |t: T| a * t.ln() - t * t * half - x * t;
    let (t_star, phi_star) = if a > T::zero() {
        let ts = (-x + (x * x + T::lit(4.0) * a).sqrt()) * half;
        (ts, phi(ts))
    } else {
        (T::zero(), T::zero())
    };
    let m = smoothing_power(a);
    let mf = T::lit(m as f64);
    let integrand = |s: T| {
        let t = s.powi(m);
        real((phi(t) - phi_star + (mf - T::one()) * s.ln()).exp() * mf)
    };
    let opts = QuadOptions {
        abs_tol: T::lit(1e-15),
        rel_tol: T::lit(1e-13),
        max_intervals: 4000,
    };
    let tail = t_star + T::lit(40.0);
    let mut total = integrate(
        integrand,
        t_star.powf(mf.recip()),
        tail.powf(mf.recip()),
        &opts,
    )?;
    if t_star > T::zero() {
        total = total + integrate(integrand, T::zero(), t_star.powf(mf.recip()), &opts)?;
    }
    Ok(-x * x * T::lit(0.25) - ln_gamma_real(xi)? + phi_star + total.re.ln())
}

/// Leading asymptotic of `ln |D_{-xi}(b)|` as `xi -> +inf`:
/// `-(xi/2) ln xi + xi/2 - b sqrt(xi) - (1/2) ln 2`.
pub fn left_decay_log<T: Real>(xi: T, b: T) -> T {
    let half = T::lit(0.5);
    -xi * half * xi.ln() + xi * half - b * xi.sqrt() - half * T::LN_2()
}

/// Residuals of the two Wronskian identities at `(nu, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WronskianResiduals<T> {
    /// `|W[D_nu(x), D_nu(-x)] - sqrt(2 pi)/Gamma(-nu)|`
    pub w_parity: T,
    /// `|W[y_even, y_odd](x) - 1|`
    pub w_evenodd: T,
}

pub fn wronskian_residuals<T: Real>(nu: Complex<T>, x: T) -> Result<WronskianResiduals<T>> {
    let (ye, yo, d_plus) = weber_triple(nu, x)?;
    let d_minus = pcf_d(nu, -x)?;
    // x -> D_nu(-x) has derivative -D_nu'(-x)
    let reflected = EvalPair::new(d_minus.value, -d_minus.dx);
    let w_pm = d_plus.wronskian(&reflected);
    let expected = recip_gamma(-nu) * (T::lit(2.0) * T::PI()).sqrt();
    Ok(WronskianResiduals {
        w_parity: (w_pm - expected).norm(),
        w_evenodd: (ye.wronskian(&yo) - T::one()).norm(),
    })
}

/// Round-off scales for [`wronskian_residuals`]: the magnitudes that the two
/// residuals can be expected to reach relative to machine epsilon.
///
/// The parity scale accounts for cancellation inside the even/odd
/// decomposition of `D_nu(x)`; it becomes large when `Re nu < 0` and `x > 0`.
pub fn wronskian_scales<T: Real>(nu: Complex<T>, x: T) -> Result<(T, T)> {
    let (ye, yo, d_plus) = weber_triple(nu, x)?;
    let d_minus = pcf_d(nu, -x)?;
    let origin = pcf_d_at_origin(nu);
    let mag = |p: &EvalPair<T>| p.value.norm().max(p.dx.norm());
    let decomposition = origin.value.norm() * mag(&ye) + origin.dx.norm() * mag(&yo);
    let parity = decomposition * (mag(&d_plus) + mag(&d_minus));
    let evenodd = (ye.value * yo.dx).norm() + (ye.dx * yo.value).norm();
    Ok((parity.max(T::one()), evenodd.max(T::one())))
}
