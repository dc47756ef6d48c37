//! The eigenvalue condition for `-y'' + (x^2/4 - 1/2) y + z [delta(x-b) - delta(x+b)] y = nu y`.
//!
//! The entire form `G(nu) = 1/Gamma(-nu) - z^2 D_nu(b)^2 Phi(nu)` is what the
//! root finder works with. The meromorphic form `M(nu) = Gamma(-nu) D_nu(b)^2 Phi(nu)`
//! (so that `G = 0` iff `M = 1/z^2` off the integers) is provided for the local
//! analysis around zeros of `nu -> D_nu(b)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma, POLE_EXCLUSION_RADIUS};
use crate::scalar::{cplx, real, Real};
use crate::weber::{nu_step, weber_triple};

/// Strength of the point interaction. The real and imaginary variants square exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Coupling<T> {
    Real(T),
    /// `z = i r`
    Imaginary(T),
    Complex(Complex<T>),
}

impl<T: Real> Coupling<T> {
    pub fn value(&self) -> Complex<T> {
        match *self {
            Coupling::Real(r) => real(r),
            Coupling::Imaginary(r) => cplx(T::zero(), r),
            Coupling::Complex(z) => z,
        }
    }

    pub fn squared(&self) -> Complex<T> {
        match *self {
            Coupling::Real(r) => real(r * r),
            Coupling::Imaginary(r) => real(-(r * r)),
            Coupling::Complex(z) => z * z,
        }
    }

    /// `true` when `z^2` is real, which makes the spectrum closed under conjugation.
    pub fn has_real_square(&self) -> bool {
        match *self {
            Coupling::Real(_) | Coupling::Imaginary(_) => true,
            Coupling::Complex(z) => (z * z).im == T::zero(),
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        match *self {
            Coupling::Real(r) => Coupling::Real(r * factor),
            Coupling::Imaginary(r) => Coupling::Imaginary(r * factor),
            Coupling::Complex(z) => Coupling::Complex(z * factor),
        }
    }
}

/// Interaction location `b > 0` and coupling `z`, in Weber coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams<T> {
    pub b: T,
    pub coupling: Coupling<T>,
}

impl<T: Real> ProblemParams<T> {
    pub fn new(b: T, coupling: Coupling<T>) -> Result<Self> {
        if !(b > T::zero()) || !b.is_finite() {
            return Err(Error::Domain(format!("b must be positive and finite, got {b}")));
        }
        let z = coupling.value();
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain("coupling must be finite".into()));
        }
        Ok(Self { b, coupling })
    }

    /// Parameters of the harmonic-oscillator form `-y'' + x^2 y + z_ho [delta(x-b_ho) - delta(x+b_ho)] y`.
    pub fn from_harmonic_oscillator(b_ho: T, z_ho: Coupling<T>) -> Result<Self> {
        let s = T::SQRT_2();
        Self::new(b_ho * s, z_ho.scaled(s.recip()))
    }

    /// `(b_ho, z_ho)` for the harmonic-oscillator form.
    pub fn to_harmonic_oscillator(&self) -> (T, Coupling<T>) {
        let s = T::SQRT_2();
        (self.b / s, self.coupling.scaled(s))
    }

    pub fn z(&self) -> Complex<T> {
        self.coupling.value()
    }

    pub fn z_squared(&self) -> Complex<T> {
        self.coupling.squared()
    }
}

/// Values and derivatives at `x = b` of `D_nu` (P, Q), the even solution (R, S)
/// and the odd solution (T, U).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct BoundaryData<T> {
    pub P: Complex<T>,
    pub Q: Complex<T>,
    pub R: Complex<T>,
    pub S: Complex<T>,
    pub T: Complex<T>,
    pub U: Complex<T>,
}

impl<T: Real> BoundaryData<T> {
    pub fn at(nu: Complex<T>, b: T) -> Result<Self> {
        let (ye, yo, d) = weber_triple(nu, b)?;
        Ok(Self {
            P: d.value,
            Q: d.dx,
            R: ye.value,
            S: ye.dx,
            T: yo.value,
            U: yo.dx,
        })
    }

    /// `RQ - SP`, the Wronskian of the even solution with `D_nu`.
    pub fn even_wronskian(&self) -> Complex<T> {
        self.R * self.Q - self.S * self.P
    }

    /// `TQ - UP`, the Wronskian of the odd solution with `D_nu`.
    pub fn odd_wronskian(&self) -> Complex<T> {
        self.T * self.Q - self.U * self.P
    }

    pub fn determinant(&self, z: Complex<T>) -> Complex<T> {
        let two = T::lit(2.0);
        (self.even_wronskian() * self.odd_wronskian() - z * z * self.P * self.P * self.R * self.T) * two
    }
}

/// `Phi(nu) = sqrt(2/pi) y_even(nu, b) y_odd(nu, b)`.
pub fn phi<T: Real>(nu: Complex<T>, b: T) -> Result<Complex<T>> {
    let (ye, yo, _) = weber_triple(nu, b)?;
    Ok(ye.value * yo.value * T::FRAC_2_PI().sqrt())
}

/// The entire eigenvalue condition `G(nu)`.
pub fn eig_residual_g<T: Real>(nu: Complex<T>, p: &ProblemParams<T>) -> Result<Complex<T>> {
    Ok(g_terms(nu, p)?.0)
}

/// `G(nu)` together with the magnitude of its two terms, which sets the scale
/// against which a residual should be judged.
pub fn g_terms<T: Real>(nu: Complex<T>, p: &ProblemParams<T>) -> Result<(Complex<T>, T)> {
    let (ye, yo, d) = weber_triple(nu, p.b)?;
    let ph = ye.value * yo.value * T::FRAC_2_PI().sqrt();
    let rg = recip_gamma(-nu);
    let coupling_term = p.z_squared() * d.value * d.value * ph;
    let scale = rg.norm() + coupling_term.norm();
    Ok((rg - coupling_term, scale))
}

/// Magnitude of the two terms of `G`, floored at 1.
pub fn g_scale<T: Real>(nu: Complex<T>, p: &ProblemParams<T>) -> Result<T> {
    Ok(g_terms(nu, p)?.1.max(T::one()))
}

/// `dG/dnu` by complex central difference.
pub fn eig_residual_g_dnu<T: Real>(nu: Complex<T>, p: &ProblemParams<T>) -> Result<Complex<T>> {
    let h = nu_step(nu);
    let plus = eig_residual_g(nu + h, p)?;
    let minus = eig_residual_g(nu - h, p)?;
    Ok((plus - minus) / (h + h))
}

/// Threshold on `|D_n(b)|` below which an integer `n` counts as a zero of `D`.
pub const INTEGER_ZERO_THRESHOLD: f64 = 1e-10;

/// Radius of the circle used to extend `M` across a removable singularity.
pub const EXTENSION_RADIUS: f64 = 0.01;

const EXTENSION_SAMPLES: usize = 64;

pub(crate) fn m_direct<T: Real>(nu: Complex<T>, b: T) -> Result<Complex<T>> {
    let (ye, yo, d) = weber_triple(nu, b)?;
    let g = gamma(-nu)?;
    Ok(g * d.value * d.value * ye.value * yo.value * T::FRAC_2_PI().sqrt())
}

/// `M(nu) = Gamma(-nu) D_nu(b)^2 Phi(nu)`.
///
/// Near a non-negative integer `n` with `D_n(b) = 0` the singularity is
/// removable and the analytic extension is returned, evaluated by the Cauchy
/// integral over a circle of radius [`EXTENSION_RADIUS`]. Other integers are
/// genuine poles and produce [`Error::Pole`].
pub fn big_m<T: Real>(nu: Complex<T>, b: T) -> Result<Complex<T>> {
    let n = nu.re.round();
    let dist = (nu - n).norm();
    let removable = n >= T::zero() && dist < T::lit(EXTENSION_RADIUS / 2.0) && integer_zero(n, b)?;
    if removable {
        return m_extension(nu, n, b);
    }
    if n >= T::zero() && dist < T::lit(POLE_EXCLUSION_RADIUS) {
        return Err(Error::Pole {
            re: nu.re.as_f64(),
            im: nu.im.as_f64(),
            radius: POLE_EXCLUSION_RADIUS,
        });
    }
    m_direct(nu, b)
}

/// Whether `D_n(b)` vanishes at the integer `n`.
pub fn integer_zero<T: Real>(n: T, b: T) -> Result<bool> {
    let (_, _, d) = weber_triple(real(n), b)?;
    Ok(d.value.norm() < T::lit(INTEGER_ZERO_THRESHOLD))
}

fn m_extension<T: Real>(nu: Complex<T>, n: T, b: T) -> Result<Complex<T>> {
    let radius = T::lit(EXTENSION_RADIUS);
    let center = real(n);
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..EXTENSION_SAMPLES {
        let theta = T::lit(2.0 * std::f64::consts::PI * k as f64 / EXTENSION_SAMPLES as f64);
        let offset = Complex::from_polar(radius, theta);
        let w = center + offset;
        acc = acc + m_direct(w, b)? * offset / (w - nu);
    }
    Ok(acc / T::lit(EXTENSION_SAMPLES as f64))
}

/// The 4x4 boundary determinant, equal to `sqrt(2 pi) G(nu)`.
pub fn boundary_det<T: Real>(nu: Complex<T>, p: &ProblemParams<T>) -> Result<Complex<T>> {
    Ok(BoundaryData::at(nu, p.b)?.determinant(p.z()))
}
