mod output;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use weber_spectra::condition::{Coupling, ProblemParams};
use weber_spectra::dzero::find_d_zeros_with_expansion;
use weber_spectra::fd_oracle::{oracle_spectrum, GridSpec};
use weber_spectra::solver::{count_nonreal, solve_rect, trajectory_with_slices, RectRegion, SolverConfig};
use weber_spectra::weber::pcf_d;
use weber_spectra::Error;

use output::{csv_bytes, emit, json_bytes, num, RunManifest};

const EXIT_RANGE: u8 = 2;
const EXIT_ZERO_FINDER: u8 = 3;
const EXIT_SOLVER: u8 = 4;
const EXIT_ORACLE: u8 = 5;
const EXIT_VALIDATION: u8 = 6;

#[derive(Parser)]
#[command(name = "weber-spectra", version, about = "Spectra of the Weber operator with an odd pair of point interactions")]
struct Cli {
    /// JSON file with solver settings; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CouplingArgs {
    /// Real part of the coupling z.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    z_re: f64,
    /// Imaginary part of the coupling z.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    z_im: f64,
}

impl CouplingArgs {
    fn coupling(&self) -> Coupling<f64> {
        match (self.z_re, self.z_im) {
            (re, im) if im == 0.0 => Coupling::Real(re),
            (re, im) if re == 0.0 => Coupling::Imaginary(im),
            (re, im) => Coupling::Complex(Complex64::new(re, im)),
        }
    }
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Search window as re_min,re_max,im_min,im_max.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate D_nu(x) and its x-derivative.
    Dnu {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        nu_im: f64,
        /// Evaluation point; defaults to --b.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
    },
    /// Zeros of nu -> D_nu(b) with their local expansion data (CSV).
    Zeros {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        nu_max: f64,
    },
    /// Eigenvalues in the search window (CSV).
    Spectrum {
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        z: CouplingArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Eigenvalue branches for z = i r over a grid of r (CSV).
    Trajectory {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        r_step: f64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Number of non-real eigenvalues in the window for z = i r (JSON).
    Count {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Compare the solver with the finite-difference matrix (JSON).
    Oracle {
        #[arg(long)]
        b: f64,
        /// Shorthand for --z-im.
        #[arg(long, allow_hyphen_values = true)]
        r: Option<f64>,
        #[command(flatten)]
        z: CouplingArgs,
        #[arg(long = "L")]
        half_width: Option<f64>,
        #[arg(long, default_value_t = 2400)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        k: usize,
        /// Largest accepted deviation.
        #[arg(long, default_value_t = 5e-3)]
        tol: f64,
        /// Solve at the grid node the matrix uses for b instead of at b itself.
        #[arg(long)]
        snapped_b: bool,
    },
    /// Run the invariant suite (JSON); nonzero exit on any failure.
    Validate,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Range(_) | Error::Domain(_) | Error::Pole { .. } | Error::Grid(_) => EXIT_RANGE,
        Error::DegenerateZero { .. } | Error::Fit(_) => EXIT_ZERO_FINDER,
        Error::Eigensolve(_) => EXIT_ORACLE,
        Error::Quadrature { .. }
        | Error::Contour { .. }
        | Error::BoundaryRoot { .. }
        | Error::Convergence(_)
        | Error::TooSmallCoupling { .. }
        | Error::MatchAmbiguity { .. } => EXIT_SOLVER,
    }
}

fn lib<T>(r: weber_spectra::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure { code: exit_code(&e), error: anyhow!(e) })
}

fn load_config(path: Option<&PathBuf>, window: Option<&WindowArgs>) -> Result<SolverConfig, Failure> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => SolverConfig::default(),
    };
    if let Some(w) = window.and_then(|w| w.window.as_ref()) {
        if w.len() != 4 {
            return Err(Failure { code: EXIT_RANGE, error: anyhow!("--window needs re_min,re_max,im_min,im_max") });
        }
        cfg.nu_window = lib(RectRegion::new(w[0], w[1], w[2], w[3]))?;
    }
    lib(cfg.validate())?;
    Ok(cfg)
}

fn cplx_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct DnuReport {
    nu: [f64; 2],
    x: f64,
    value: [f64; 2],
    dx: [f64; 2],
}

#[derive(Serialize)]
struct CountReport {
    r: f64,
    #[serde(rename = "N_window")]
    n_window: usize,
    window: RectRegion,
    caveat: &'static str,
}

const WINDOW_CAVEAT: &str = "counts are restricted to the search window; eigenvalues outside it are not seen";

#[derive(Serialize)]
struct OracleReport {
    solver_at_b: f64,
    snap: weber_spectra::fd_oracle::SnapInfo,
    h: f64,
    solver_roots: Vec<[f64; 2]>,
    oracle_eigenvalues: Vec<[f64; 2]>,
    max_deviation: f64,
    tol: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ValidateReport {
    checks: Vec<validate::Check>,
    pass: bool,
}

fn nearest(z: Complex64, set: &[Complex64]) -> f64 {
    set.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Dnu { nu, nu_im, x, b } => {
            let cfg = load_config(cli.config.as_ref(), None)?;
            let x = x.or(b).ok_or_else(|| anyhow!("one of --x or --b is required"))?;
            let nu = Complex64::new(nu, nu_im);
            let d = lib(pcf_d(nu, x))?;
            let manifest = RunManifest::new("dnu", None, &cfg, false);
            let report = DnuReport { nu: cplx_pair(nu), x, value: cplx_pair(d.value), dx: cplx_pair(d.dx) };
            emit(&json_bytes(&manifest, &report)?, out)?;
        }
        Command::Zeros { b, nu_max } => {
            let cfg = load_config(cli.config.as_ref(), None)?;
            let params = lib(ProblemParams::new(b, Coupling::Real(0.0)))?;
            let zeros = lib(find_d_zeros_with_expansion(b, nu_max))?;
            let rows: Vec<Vec<String>> = zeros
                .iter()
                .map(|z| {
                    let e = z.expansion.expect("expansion computed");
                    vec![num(z.lambda), z.is_integer.to_string(), num(z.d_deriv), num(e.c2), num(e.b_bound), num(e.rho)]
                })
                .collect();
            let manifest = RunManifest::new("zeros", Some(params), &cfg, false);
            emit(&csv_bytes(&manifest, &["lambda", "is_integer", "d_deriv", "c2", "B", "rho"], &rows)?, out)?;
        }
        Command::Spectrum { b, z, window } => {
            let cfg = load_config(cli.config.as_ref(), Some(&window))?;
            let params = lib(ProblemParams::new(b, z.coupling()))?;
            let roots = lib(solve_rect(&params, &cfg.nu_window, &cfg))?;
            let rows: Vec<Vec<String>> = roots
                .iter()
                .map(|r| {
                    let origin = serde_json::to_value(r.origin).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                    vec![num(r.nu.re), num(r.nu.im), num(r.residual), r.multiplicity.to_string(), origin]
                })
                .collect();
            let manifest = RunManifest::new("spectrum", Some(params), &cfg, true);
            emit(&csv_bytes(&manifest, &["re_nu", "im_nu", "residual", "multiplicity", "origin"], &rows)?, out)?;
        }
        Command::Trajectory { b, r_min, r_max, r_step, window } => {
            let cfg = load_config(cli.config.as_ref(), Some(&window))?;
            if !(r_step > 0.0) || !(r_max >= r_min) {
                return Err(Failure { code: EXIT_RANGE, error: anyhow!("need r_step > 0 and r_max >= r_min") });
            }
            let steps = ((r_max - r_min) / r_step + 1e-9).floor() as usize;
            let grid: Vec<f64> = (0..=steps).map(|j| r_min + j as f64 * r_step).collect();
            let (branches, slices) = lib(trajectory_with_slices(b, &grid, &cfg))?;
            let mut rows = Vec::new();
            for br in &branches {
                for &(r, nu) in &br.points {
                    let residual = slices
                        .iter()
                        .find(|(s, _)| *s == r)
                        .and_then(|(_, roots)| roots.iter().find(|e| e.nu == nu))
                        .map_or(f64::NAN, |e| e.residual);
                    rows.push(vec![br.id.to_string(), num(r), num(nu.re), num(nu.im), num(residual)]);
                }
            }
            let params = lib(ProblemParams::new(b, Coupling::Imaginary(r_min)))?;
            let manifest = RunManifest::new("trajectory", Some(params), &cfg, true);
            emit(&csv_bytes(&manifest, &["branch_id", "r", "re_nu", "im_nu", "residual"], &rows)?, out)?;
        }
        Command::Count { b, r, window } => {
            let cfg = load_config(cli.config.as_ref(), Some(&window))?;
            let params = lib(ProblemParams::new(b, Coupling::Imaginary(r)))?;
            let n = lib(count_nonreal(&params, &cfg))?;
            let manifest = RunManifest::new("count", Some(params), &cfg, true);
            let report = CountReport { r, n_window: n, window: cfg.nu_window, caveat: WINDOW_CAVEAT };
            emit(&json_bytes(&manifest, &report)?, out)?;
        }
        Command::Oracle { b, r, z, half_width, n, k, tol, snapped_b } => {
            let cfg = load_config(cli.config.as_ref(), None)?;
            let z = match r {
                Some(r) => CouplingArgs { z_re: 0.0, z_im: r },
                None => z,
            };
            let params = lib(ProblemParams::new(b, z.coupling()))?;
            let grid = match half_width {
                Some(l) => GridSpec::new(l, n),
                None => GridSpec::for_b(b, n),
            };
            let fd = lib(oracle_spectrum(&params, &grid, k))?;
            let solver_b = if snapped_b { b + fd.snap.offset } else { b };
            let solver_params = lib(ProblemParams::new(solver_b, params.coupling))?;
            // compare the part of the spectrum the truncated grid resolves
            let re_cut = k as f64 - 2.0;
            let lowest = fd.eigenvalues.iter().map(|e| e.re).fold(f64::INFINITY, f64::min);
            let rect = lib(RectRegion::new(lowest.min(0.0) - 1.0, re_cut + 0.5, cfg.nu_window.im_min, cfg.nu_window.im_max))?;
            let roots: Vec<Complex64> = lib(solve_rect(&solver_params, &rect, &cfg))?.iter().map(|e| e.nu).collect();
            let mut max_dev = 0.0f64;
            for r in roots.iter().filter(|r| r.re <= re_cut) {
                max_dev = max_dev.max(nearest(*r, &fd.eigenvalues));
            }
            for e in fd.eigenvalues.iter().filter(|e| e.re <= re_cut) {
                max_dev = max_dev.max(nearest(*e, &roots));
            }
            let pass = max_dev <= tol;
            let report = OracleReport {
                solver_at_b: solver_b,
                snap: fd.snap,
                h: fd.h,
                solver_roots: roots.iter().map(|&r| cplx_pair(r)).collect(),
                oracle_eigenvalues: fd.eigenvalues.iter().map(|&e| cplx_pair(e)).collect(),
                max_deviation: max_dev,
                tol,
                pass,
            };
            let manifest = RunManifest::new("oracle", Some(params), &cfg, false);
            emit(&json_bytes(&manifest, &report)?, out)?;
            if !pass {
                return Err(Failure { code: EXIT_ORACLE, error: anyhow!("oracle deviation {max_dev:e} exceeds {tol:e}") });
            }
        }
        Command::Validate => {
            let cfg = load_config(cli.config.as_ref(), None)?;
            let checks = validate::run(&cfg);
            let pass = checks.iter().all(|c| c.pass);
            let manifest = RunManifest::new("validate", None, &cfg, false);
            emit(&json_bytes(&manifest, &ValidateReport { checks, pass })?, out)?;
            if !pass {
                return Err(Failure { code: EXIT_VALIDATION, error: anyhow!("validation failed") });
            }
        }
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("WEBER_SPECTRA_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            // only fails if a pool already exists, which cannot happen this early
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
