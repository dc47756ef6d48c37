//! Complex Gamma function, its entire reciprocal, and log-Gamma.
//!
//! Evaluation uses the Lanczos approximation (g = 7, nine terms) in the right
//! half-plane and the reflection formula for `Re w < 1/2`. The reflection
//! factor `sin(pi w)` is computed after exact integer reduction of `Re w`, so
//! the reciprocal Gamma keeps full relative accuracy next to its zeros.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, real, Real};

const LANCZOS_G: f64 = 7.0;

const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Default radius around `-N0` inside which [`gamma`] reports a pole.
pub const POLE_EXCLUSION_RADIUS: f64 = 1e-8;

/// Arguments this close to a non-positive integer make [`recip_gamma`] return 0.
pub const ZERO_SNAP_RADIUS: f64 = 1e-12;

/// `ln Gamma(w)` for `Re w >= 1/2` (not branch-normalised in the imaginary part).
fn ln_gamma_right<T: Real>(w: Complex<T>) -> Complex<T> {
    let one = T::one();
    let half = T::lit(0.5);
    let zm1 = w - one;
    let mut series = real(T::lit(LANCZOS_COEF[0]));
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series = series + real(T::lit(c)) / (zm1 + T::lit(i as f64));
    }
    let t = zm1 + T::lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::lit(0.5 * (2.0 * std::f64::consts::PI).ln());
    (zm1 + half) * t.ln() - t + series.ln() + half_ln_two_pi
}

/// `sin(pi w)` with the integer part of `Re w` removed exactly first.
pub(crate) fn sin_pi<T: Real>(w: Complex<T>) -> Complex<T> {
    let k = w.re.round();
    let frac = w.re - k;
    let arg = cplx(frac, w.im) * T::PI();
    let s = arg.sin();
    // (-1)^k without converting k to an integer type
    let odd = (k * T::lit(0.5)).fract() != T::zero();
    if odd {
        -s
    } else {
        s
    }
}

/// Distance from `w` to the nearest non-positive integer, together with that integer.
fn nearest_nonpositive_integer<T: Real>(w: Complex<T>) -> (T, T) {
    let n = w.re.round().min(T::zero());
    let d = (w - n).norm();
    (d, n)
}

/// The entire function `1/Gamma(w)`.
///
/// Returns exactly zero within [`ZERO_SNAP_RADIUS`] of `0, -1, -2, ...`.
pub fn recip_gamma<T: Real>(w: Complex<T>) -> Complex<T> {
    let (dist, _) = nearest_nonpositive_integer(w);
    if dist < T::lit(ZERO_SNAP_RADIUS) {
        return Complex::new(T::zero(), T::zero());
    }
    if w.re < T::lit(0.5) {
        // 1/Gamma(w) = sin(pi w) Gamma(1 - w) / pi
        let lg = ln_gamma_right(real(T::one()) - w);
        sin_pi(w) * lg.exp() / T::PI()
    } else {
        (-ln_gamma_right(w)).exp()
    }
}

/// `Gamma(w)` with the default pole-exclusion radius.
pub fn gamma<T: Real>(w: Complex<T>) -> Result<Complex<T>> {
    gamma_with_radius(w, T::lit(POLE_EXCLUSION_RADIUS))
}

/// `Gamma(w)`, failing with [`Error::Pole`] within `radius` of `-N0`.
pub fn gamma_with_radius<T: Real>(w: Complex<T>, radius: T) -> Result<Complex<T>> {
    let (dist, _) = nearest_nonpositive_integer(w);
    if dist < radius {
        return Err(Error::Pole {
            re: w.re.as_f64(),
            im: w.im.as_f64(),
            radius: radius.as_f64(),
        });
    }
    if w.re < T::lit(0.5) {
        let lg = ln_gamma_right(real(T::one()) - w);
        Ok(real(T::PI()) / (sin_pi(w) * lg.exp()))
    } else {
        Ok(ln_gamma_right(w).exp())
    }
}

/// `ln Gamma(x)` for real `x > 0`.
pub fn ln_gamma_real<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    if x < T::lit(0.5) {
        // Gamma(x) = Gamma(x + 1) / x
        Ok(ln_gamma_right(real(x + T::one())).re - x.ln())
    } else {
        Ok(ln_gamma_right(real(x)).re)
    }
}

/// Relative residual of the duplication formula
/// `Gamma(2w) = 2^(2w-1) pi^(-1/2) Gamma(w) Gamma(w + 1/2)`.
pub fn check_duplication<T: Real>(w: Complex<T>) -> Result<T> {
    let two = T::lit(2.0);
    let lhs = gamma(w * two)?;
    let g1 = gamma(w)?;
    let g2 = gamma(w + T::lit(0.5))?;
    let pow = ((w * two - T::one()) * two.ln()).exp();
    let rhs = pow * g1 * g2 / T::PI().sqrt();
    Ok((lhs - rhs).norm() / lhs.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn recip_gamma_examples() {
        assert_relative_eq!(recip_gamma(c(1.0, 0.0)).re, 1.0, epsilon = 1e-15);
        assert_eq!(recip_gamma(c(-3.0, 0.0)), c(0.0, 0.0));
        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        assert_relative_eq!(
            recip_gamma(c(0.5, 0.0)).re,
            inv_sqrt_pi,
            max_relative = 1e-14
        );
        assert_relative_eq!(inv_sqrt_pi, 0.564_189_583_5, epsilon = 1e-10);
    }

    #[test]
    fn gamma_examples() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma(c(2.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma(c(0.5, 0.0)).unwrap().re,
            sqrt_pi,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gamma(c(-0.5, 0.0)).unwrap().re,
            -2.0 * sqrt_pi,
            max_relative = 1e-14
        );
        assert_relative_eq!(sqrt_pi, 1.772_453_850_9, epsilon = 1e-10);
    }

    #[test]
    fn gamma_pole_error() {
        assert!(matches!(gamma(c(-4.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c(0.0, 5e-9)), Err(Error::Pole { .. })));
        assert!(gamma(c(-4.0 + 1e-6, 0.0)).is_ok());
        assert!(gamma_with_radius(c(-4.0 + 1e-6, 0.0), 1e-5).is_err());
    }

    #[test]
    fn recip_gamma_factorials() {
        let mut fact = 1.0f64;
        for n in 0..=15 {
            if n > 0 {
                fact *= n as f64;
            }
            let v = recip_gamma(c(n as f64 + 1.0, 0.0));
            assert_relative_eq!(v.re, 1.0 / fact, max_relative = 1e-12);
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn recip_gamma_zero_at_nonpositive_integers() {
        for n in 0..=30 {
            assert_eq!(recip_gamma(c(-(n as f64), 0.0)), c(0.0, 0.0));
            assert_eq!(recip_gamma(c(-(n as f64) + 5e-13, 0.0)), c(0.0, 0.0));
        }
    }

    #[test]
    fn recip_gamma_accurate_next_to_zeros() {
        // 1/Gamma(-n + d) ~ (-1)^n n! d for small d
        let d = 1e-9;
        let v = recip_gamma(c(-5.0 + d, 0.0)).re;
        assert_relative_eq!(v, -120.0 * d, max_relative = 1e-6);
    }

    #[test]
    fn conjugate_symmetry() {
        for &(re, im) in &[
            (0.3, 1.7),
            (-4.2, 2.5),
            (7.5, -3.0),
            (-9.9, -0.1),
            (2.0, 8.0),
        ] {
            let w = c(re, im);
            let a = recip_gamma(w.conj());
            let b = recip_gamma(w).conj();
            assert!((a - b).norm() <= 1e-13 * b.norm(), "{w}");
        }
    }

    #[test]
    fn duplication_examples() {
        assert!(check_duplication(c(1.0, 0.0)).unwrap() <= 1e-13);
        assert!(check_duplication(c(0.25, 0.0)).unwrap() <= 1e-12);
        assert!(check_duplication(c(3.0, 2.0)).unwrap() <= 1e-12);
        assert!(check_duplication(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn duplication_grid() {
        let mut worst = 0.0f64;
        for i in 0..10 {
            for j in 0..10 {
                let w = c(
                    -10.0 + 20.0 * (i as f64 + 0.37) / 10.0,
                    -10.0 + 20.0 * (j as f64 + 0.61) / 10.0,
                );
                let r = check_duplication(w).unwrap();
                worst = worst.max(r);
            }
        }
        assert!(worst <= 1e-11, "worst duplication residual {worst:e}");
    }

    #[test]
    fn increasing_beyond_two() {
        let mut prev = gamma(c(2.0, 0.0)).unwrap().re;
        for k in 1..100 {
            let x = 2.0 + 0.1 * k as f64;
            let g = gamma(c(x, 0.0)).unwrap().re;
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn stirling_estimate() {
        for &x in &[20.0f64, 40.0, 80.0] {
            let lg = ln_gamma_real(x).unwrap();
            let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln();
            assert!((lg - stirling).abs() <= 1.0 / (10.0 * x));
            // the classical 1/(12x) leading correction
            assert_relative_eq!(lg - stirling, 1.0 / (12.0 * x), max_relative = 1e-2);
        }
    }

    #[test]
    fn ln_gamma_small_argument() {
        assert_relative_eq!(
            ln_gamma_real(0.25f64).unwrap(),
            1.288_022_524_698_077_5,
            max_relative = 1e-13
        );
        assert!(ln_gamma_real(0.0f64).is_err());
    }

    #[test]
    fn single_precision_instance() {
        let v = recip_gamma(Complex::<f32>::new(0.5, 0.0));
        assert!((v.re - 0.564_189_6).abs() < 1e-5);
        let g = gamma(Complex::<f32>::new(5.0, 0.0)).unwrap();
        assert!((g.re - 24.0).abs() < 1e-3);
    }
}
