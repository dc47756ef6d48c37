//! Quick invariant suite behind `weber-spectra validate`.

use num_complex::Complex64;
use serde::Serialize;
use weber_spectra::condition::{eig_residual_g, g_scale, Coupling, ProblemParams};
use weber_spectra::fd_oracle::{oracle_spectrum, GridSpec};
use weber_spectra::gamma::check_duplication;
use weber_spectra::solver::{solve_rect, RectRegion, SolverConfig};
use weber_spectra::weber::{pcf_d, pcf_d_integral, wronskian_residuals, wronskian_scales};
use weber_spectra::Result;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub value: f64,
    pub limit: f64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check(name: &'static str, value: Result<f64>, limit: f64) -> Check {
    match value {
        Ok(v) => Check { name, pass: v <= limit, value: v, limit },
        Err(_) => Check { name, pass: false, value: f64::NAN, limit },
    }
}

fn wronskian() -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            let nu = c(-4.0 + 2.0 * i as f64, -4.0 + 2.0 * j as f64);
            for x in [0.5, 1.5, 3.0] {
                let r = wronskian_residuals(nu, x)?;
                let (sp, se) = wronskian_scales(nu, x)?;
                worst = worst.max(r.w_parity / sp).max(r.w_evenodd / se);
            }
        }
    }
    Ok(worst)
}

fn duplication() -> Result<f64> {
    [c(0.3, 0.2), c(2.5, -1.0), c(-1.7, 0.6)].iter().try_fold(0.0f64, |m, &w| Ok(m.max(check_duplication(w)?)))
}

fn known_values() -> Result<f64> {
    let mut worst = pcf_d(c(2.0, 0.0), 1.0)?.value.norm();
    for x in [0.5f64, 1.0, 2.0] {
        worst = worst.max((pcf_d(c(0.0, 0.0), x)?.value.re - (-x * x / 4.0).exp()).abs());
    }
    Ok(worst)
}

fn series_vs_quadrature() -> Result<f64> {
    let mut worst = 0.0f64;
    for (nu, x) in [(c(-2.3, 0.4), 0.8), (c(1.7, -0.6), 1.4), (c(3.0, 1.0), 2.0)] {
        worst = worst.max((pcf_d(nu, x)?.value - pcf_d_integral(nu, x)?).norm());
    }
    Ok(worst)
}

fn free_spectrum(cfg: &SolverConfig) -> Result<f64> {
    let p = ProblemParams::new(1.0, Coupling::Real(0.0))?;
    let roots = solve_rect(&p, &RectRegion::new(-0.5, 5.5, -1.0, 1.0)?, cfg)?;
    if roots.len() != 6 {
        return Ok(f64::INFINITY);
    }
    Ok(roots.iter().enumerate().map(|(n, r)| (r.nu - n as f64).norm()).fold(0.0, f64::max))
}

fn reality(cfg: &SolverConfig) -> Result<f64> {
    let p = ProblemParams::new(1.0, Coupling::Real(3.0))?;
    let roots = solve_rect(&p, &RectRegion::new(-1.0, 8.0, -2.0, 2.0)?, cfg)?;
    Ok(roots.iter().map(|r| r.nu.im.abs()).fold(0.0, f64::max))
}

fn pairing(cfg: &SolverConfig) -> Result<f64> {
    let p = ProblemParams::new(2.0, Coupling::Imaginary(5.0))?;
    let roots = solve_rect(&p, &RectRegion::new(-1.0, 8.0, -3.0, 3.0)?, cfg)?;
    Ok(roots
        .iter()
        .map(|r| roots.iter().map(|s| (s.nu - r.nu.conj()).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

fn persistence() -> Result<f64> {
    let p = ProblemParams::new(1.0, Coupling::Imaginary(10.0))?;
    let nu = c(2.0, 0.0);
    Ok(eig_residual_g(nu, &p)?.norm() / g_scale(nu, &p)?)
}

/// Discretisation agreement: the solver is run at the node the matrix uses for `b`.
fn oracle(cfg: &SolverConfig) -> Result<f64> {
    let p = ProblemParams::new(1.0, Coupling::Imaginary(10.0))?;
    let fd = oracle_spectrum(&p, &GridSpec::new(12.0, 2400), 8)?;
    let snapped = ProblemParams::new(1.0 + fd.snap.offset, p.coupling)?;
    let roots = solve_rect(&snapped, &RectRegion::new(-1.0, 6.0, -3.0, 3.0)?, cfg)?;
    Ok(roots
        .iter()
        .map(|r| fd.eigenvalues.iter().map(|e| (e - r.nu).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

pub fn run(cfg: &SolverConfig) -> Vec<Check> {
    vec![
        check("wronskian_relative", wronskian(), 1e-10),
        check("gamma_duplication", duplication(), 1e-11),
        check("known_values", known_values(), 1e-12),
        check("series_vs_quadrature", series_vs_quadrature(), 1e-9),
        check("free_spectrum", free_spectrum(cfg), 1e-12),
        check("real_coupling_reality", reality(cfg), 1e-7),
        check("conjugate_pairing", pairing(cfg), 1e-9),
        check("integer_zero_persistence", persistence(), 1e-11),
        check("oracle_agreement_snapped_b", oracle(cfg), 1e-3),
    ]
}
