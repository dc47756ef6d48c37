//! Eigenvalues in a rectangle of the `nu`-plane, seeds near zeros of `D`,
//! branch tracking over a coupling sweep, and the harmonic-oscillator map.
//!
//! Roots of the entire function `G` are counted with the argument principle
//! along rectangle boundaries, isolated by quadrisection and polished by Newton.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::condition::{eig_residual_g_dnu, g_terms, Coupling, ProblemParams};
use crate::dzero::{local_expansion, DZeroInfo};
use crate::error::{Error, Result};

/// Axis-aligned rectangle in the `nu`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl RectRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = Self { re_min, re_max, im_min, im_max };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite || !(self.re_min < self.re_max) || !(self.im_min < self.im_max) {
            return Err(Error::Domain(format!("degenerate rectangle {self:?}")));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        self.point(0.5, 0.5)
    }

    /// The point at fractional position `(fx, fy)`.
    pub fn point(&self, fx: f64, fy: f64) -> Complex64 {
        Complex64::new(self.re_min + fx * self.width(), self.im_min + fy * self.height())
    }

    pub fn contains(&self, nu: Complex64, tol: f64) -> bool {
        nu.re >= self.re_min - tol && nu.re <= self.re_max + tol && nu.im >= self.im_min - tol && nu.im <= self.im_max + tol
    }

    pub fn expanded(&self, d: f64) -> Self {
        Self {
            re_min: self.re_min - d,
            re_max: self.re_max + d,
            im_min: self.im_min - d,
            im_max: self.im_max + d,
        }
    }

    /// Distance from `nu` (assumed inside) to the nearest edge.
    pub fn edge_distance(&self, nu: Complex64) -> f64 {
        (nu.re - self.re_min)
            .min(self.re_max - nu.re)
            .min(nu.im - self.im_min)
            .min(self.im_max - nu.im)
    }

    fn split(&self, fx: f64, fy: f64) -> [RectRegion; 4] {
        let xm = self.re_min + fx * self.width();
        let ym = self.im_min + fy * self.height();
        [
            Self { re_max: xm, im_max: ym, ..*self },
            Self { re_min: xm, im_max: ym, ..*self },
            Self { re_max: xm, im_min: ym, ..*self },
            Self { re_min: xm, im_min: ym, ..*self },
        ]
    }
}

/// Tunables of the root finder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub newton_tol: f64,
    pub max_newton: usize,
    pub winding_samples_per_unit: usize,
    pub match_radius: f64,
    pub imag_tol: f64,
    pub nu_window: RectRegion,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            newton_tol: 1e-12,
            max_newton: 60,
            winding_samples_per_unit: 256,
            match_radius: 0.25,
            imag_tol: 1e-7,
            nu_window: RectRegion { re_min: -1.0, re_max: 25.0, im_min: -6.0, im_max: 6.0 },
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.newton_tol > 0.0 && self.match_radius > 0.0 && self.imag_tol > 0.0;
        if !positive || self.max_newton == 0 || self.winding_samples_per_unit == 0 {
            return Err(Error::Domain("solver tolerances must be positive".into()));
        }
        self.nu_window.validate()
    }
}

/// How a root was first located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    GridSeed,
    DzeroSeed,
    Continuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub nu: Complex64,
    /// `|G(nu)|`
    pub residual: f64,
    pub multiplicity: usize,
    pub origin: Origin,
}

/// Relative residual below which a Newton result is accepted.
pub const ACCEPT_RESIDUAL: f64 = 1e-9;
/// Float spacings of `nu` added to the acceptance bound through `|G'|`.
pub const ROUNDING_ULPS: f64 = 8.0;
/// Roots closer than this are merged.
pub const DEDUP_RADIUS: f64 = 1e-8;
/// `|G|` below this fraction of its term scale on a contour signals a root on the contour.
pub const BOUNDARY_THRESHOLD: f64 = 1e-10;
/// Largest outward shift tried when a root sits on the requested contour.
pub const MAX_NUDGE: f64 = 1e-3;

const MIN_EDGE_SAMPLES: usize = 16;
const MIN_SEGMENT: f64 = 1e-11;
const MULTIPLE_ROOT_SIZE: f64 = 1e-7;
const NEWTON_CELL_SIZE: f64 = 0.5;
const SPLITS: [(f64, f64); 5] = [(0.4987, 0.5113), (0.5231, 0.4779), (0.4619, 0.5407), (0.5523, 0.4511), (0.4289, 0.5689)];
const NUDGES: [f64; 6] = [0.0, 1.7e-4, 3.9e-4, 6.1e-4, 8.3e-4, MAX_NUDGE];
const NEWTON_STARTS: [(f64, f64); 9] = [
    (0.5, 0.5),
    (0.25, 0.25),
    (0.75, 0.25),
    (0.25, 0.75),
    (0.75, 0.75),
    (0.5, 0.1),
    (0.5, 0.9),
    (0.1, 0.5),
    (0.9, 0.5),
];

/// `G` on a contour point, failing if it is too small to carry a reliable argument.
fn contour_value(nu: Complex64, p: &ProblemParams<f64>) -> Result<Complex64> {
    let (g, scale) = g_terms(nu, p)?;
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(Error::Contour { gap: f64::NAN });
    }
    if g.norm() < BOUNDARY_THRESHOLD * scale.max(1.0) {
        return Err(Error::BoundaryRoot { re: nu.re, im: nu.im });
    }
    Ok(g)
}

/// Change of `arg G` from `a` to `b`, bisecting until every step is below `pi/2`.
fn segment_arg(p: &ProblemParams<f64>, a: Complex64, ga: Complex64, b: Complex64, gb: Complex64) -> Result<f64> {
    let d = (gb / ga).arg();
    if d.abs() < 0.5 * PI {
        return Ok(d);
    }
    if (b - a).norm() < MIN_SEGMENT {
        return Err(Error::BoundaryRoot { re: a.re, im: a.im });
    }
    let m = (a + b) * 0.5;
    let gm = contour_value(m, p)?;
    Ok(segment_arg(p, a, ga, m, gm)? + segment_arg(p, m, gm, b, gb)?)
}

fn winding(p: &ProblemParams<f64>, rect: &RectRegion, per_unit: usize) -> Result<f64> {
    let corners = [
        Complex64::new(rect.re_min, rect.im_min),
        Complex64::new(rect.re_max, rect.im_min),
        Complex64::new(rect.re_max, rect.im_max),
        Complex64::new(rect.re_min, rect.im_max),
    ];
    let mut total = 0.0;
    let start = contour_value(corners[0], p)?;
    let mut prev = (corners[0], start);
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let n = ((b - a).norm() * per_unit as f64).ceil().max(MIN_EDGE_SAMPLES as f64) as usize;
        for k in 1..=n {
            let pt = if k == n { b } else { a + (b - a) * (k as f64 / n as f64) };
            let g = if e == 3 && k == n { start } else { contour_value(pt, p)? };
            total += segment_arg(p, prev.0, prev.1, pt, g)?;
            prev = (pt, g);
        }
    }
    Ok(total / (2.0 * PI))
}

/// Number of roots of `G` inside `rect` exactly as given (no nudging).
fn count_exact(p: &ProblemParams<f64>, rect: &RectRegion, cfg: &SolverConfig) -> Result<usize> {
    let mut per_unit = cfg.winding_samples_per_unit;
    let mut gap = f64::NAN;
    for _ in 0..3 {
        let w = winding(p, rect, per_unit)?;
        let n = w.round();
        gap = (w - n).abs();
        if gap < 0.1 && n >= 0.0 {
            return Ok(n as usize);
        }
        per_unit *= 2;
    }
    Err(Error::Contour { gap })
}

/// The rectangle actually used after nudging away from boundary roots, with its count.
pub fn count_zeros_nudged(p: &ProblemParams<f64>, rect: &RectRegion, cfg: &SolverConfig) -> Result<(RectRegion, usize)> {
    rect.validate()?;
    let mut last = None;
    for d in NUDGES {
        let r = rect.expanded(d);
        match count_exact(p, &r, cfg) {
            Ok(n) => return Ok((r, n)),
            Err(e @ Error::BoundaryRoot { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one nudge attempted"))
}

/// Number of eigenvalues (with multiplicity) inside `rect`, by the argument principle.
pub fn count_zeros_rect(p: &ProblemParams<f64>, rect: &RectRegion) -> Result<usize> {
    count_zeros_rect_with(p, rect, &SolverConfig::default())
}

pub fn count_zeros_rect_with(p: &ProblemParams<f64>, rect: &RectRegion, cfg: &SolverConfig) -> Result<usize> {
    Ok(count_zeros_nudged(p, rect, cfg)?.1)
}

/// Newton iteration on `G` with steps clamped to `clamp`.
pub fn newton(p: &ProblemParams<f64>, start: Complex64, cfg: &SolverConfig, clamp: f64) -> Result<Complex64> {
    let mut nu = start;
    for _ in 0..cfg.max_newton {
        let (g, _) = g_terms(nu, p)?;
        if g.norm() == 0.0 {
            return Ok(nu);
        }
        let dg = eig_residual_g_dnu(nu, p)?;
        let mut step = g / dg;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return Err(Error::Convergence(format!("singular derivative at {nu}")));
        }
        if step.norm() > clamp {
            step *= clamp / step.norm();
        }
        nu -= step;
        if step.norm() <= cfg.newton_tol * nu.norm().max(1.0) {
            return Ok(nu);
        }
    }
    Err(Error::Convergence(format!("no convergence from {start} in {} steps", cfg.max_newton)))
}

/// Polishes a root estimate and checks its residual.
pub fn polish_root(p: &ProblemParams<f64>, start: Complex64, cfg: &SolverConfig, clamp: f64, origin: Origin) -> Result<Eigenvalue> {
    let nu = newton(p, start, cfg, clamp)?;
    let (g, scale) = g_terms(nu, p)?;
    // G cannot get smaller than its slope times the spacing of floats at nu
    let rounding = ROUNDING_ULPS * f64::EPSILON * nu.norm().max(1.0) * eig_residual_g_dnu(nu, p)?.norm();
    if !(g.norm() <= ACCEPT_RESIDUAL * scale.max(1.0) + rounding) {
        return Err(Error::Convergence(format!("residual {:e} too large at {nu}", g.norm())));
    }
    Ok(Eigenvalue { nu, residual: g.norm(), multiplicity: 1, origin })
}

fn newton_in_cell(p: &ProblemParams<f64>, rect: &RectRegion, cfg: &SolverConfig, multiplicity: usize) -> Result<Eigenvalue> {
    let size = rect.width().max(rect.height());
    let mut last = Error::Convergence(format!("no start point converged inside {rect:?}"));
    for (fx, fy) in NEWTON_STARTS {
        match polish_root(p, rect.point(fx, fy), cfg, size, Origin::GridSeed) {
            Ok(e) if rect.contains(e.nu, 1e-9 * size.max(1.0)) => return Ok(Eigenvalue { multiplicity, ..e }),
            Ok(_) => {}
            Err(e @ Error::Range(_)) => return Err(e),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn split_counts(p: &ProblemParams<f64>, rect: &RectRegion, count: usize, cfg: &SolverConfig) -> Result<Vec<(RectRegion, usize)>> {
    let mut last = Error::Contour { gap: f64::NAN };
    for (fx, fy) in SPLITS {
        let children = rect.split(fx, fy);
        let counts: Vec<Result<usize>> = children.par_iter().map(|c| count_exact(p, c, cfg)).collect();
        match counts.into_iter().collect::<Result<Vec<usize>>>() {
            Ok(cs) if cs.iter().sum::<usize>() == count => {
                return Ok(children.into_iter().zip(cs).filter(|(_, n)| *n > 0).collect());
            }
            Ok(cs) => {
                last = Error::Contour { gap: (cs.iter().sum::<usize>() as f64 - count as f64).abs() };
            }
            Err(e @ (Error::BoundaryRoot { .. } | Error::Contour { .. })) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn isolate(p: &ProblemParams<f64>, rect: RectRegion, count: usize, cfg: &SolverConfig) -> Result<Vec<Eigenvalue>> {
    let size = rect.width().max(rect.height());
    if count >= 2 && size < MULTIPLE_ROOT_SIZE {
        return Ok(vec![newton_in_cell(p, &rect, cfg, count)?]);
    }
    if count == 1 && size <= NEWTON_CELL_SIZE {
        match newton_in_cell(p, &rect, cfg, 1) {
            Ok(e) => return Ok(vec![e]),
            Err(e @ Error::Range(_)) => return Err(e),
            Err(e) if size < MULTIPLE_ROOT_SIZE => return Err(e),
            Err(_) => {}
        }
    }
    let children = split_counts(p, &rect, count, cfg)?;
    let found: Vec<Vec<Eigenvalue>> = children
        .into_par_iter()
        .map(|(c, n)| isolate(p, c, n, cfg))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn sort_roots(roots: &mut [Eigenvalue]) {
    roots.sort_by(|a, b| a.nu.re.total_cmp(&b.nu.re).then(a.nu.im.total_cmp(&b.nu.im)));
}

fn dedup(mut roots: Vec<Eigenvalue>) -> Vec<Eigenvalue> {
    sort_roots(&mut roots);
    let mut out: Vec<Eigenvalue> = Vec::with_capacity(roots.len());
    for r in roots {
        if let Some(same) = out.iter_mut().find(|o| (o.nu - r.nu).norm() < DEDUP_RADIUS) {
            same.multiplicity += r.multiplicity;
        } else {
            out.push(r);
        }
    }
    out
}

/// All eigenvalues in `rect`, sorted by real then imaginary part.
///
/// If a root sits on the boundary the rectangle is widened by up to [`MAX_NUDGE`];
/// the multiplicities always add up to the argument-principle count of the
/// rectangle actually searched.
pub fn solve_rect(p: &ProblemParams<f64>, rect: &RectRegion, cfg: &SolverConfig) -> Result<Vec<Eigenvalue>> {
    cfg.validate()?;
    let (rect, count) = count_zeros_nudged(p, rect, cfg)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let roots = dedup(isolate(p, rect, count, cfg)?);
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    if total != count {
        return Err(Error::Contour { gap: (total as f64 - count as f64).abs() });
    }
    Ok(roots)
}

/// The two roots predicted near a zero `lambda` of `D`: `lambda +- epsilon`,
/// `epsilon^2 = 1/(z^2 c2)`, ordered with the non-negative imaginary part first.
pub fn seeds_near_zero(zero: &DZeroInfo, p: &ProblemParams<f64>) -> Result<[Complex64; 2]> {
    let info = match zero.expansion {
        Some(_) => *zero,
        None => local_expansion(zero, p.b)?,
    };
    let e = info.expansion.expect("expansion filled in");
    let threshold = e.coupling_threshold();
    let magnitude = p.z().norm();
    if !(magnitude > threshold) {
        return Err(Error::TooSmallCoupling { magnitude, threshold });
    }
    let eps = e.epsilon(p.z());
    let lambda = Complex64::new(info.lambda, 0.0);
    let (a, b) = (lambda + eps, lambda - eps);
    Ok(if a.im >= b.im { [a, b] } else { [b, a] })
}

/// Seeds without the coupling threshold check, for diagnostics below the proven regime.
pub fn seeds_unchecked(zero: &DZeroInfo, p: &ProblemParams<f64>) -> Result<[Complex64; 2]> {
    let info = match zero.expansion {
        Some(_) => *zero,
        None => local_expansion(zero, p.b)?,
    };
    let eps = info.expansion.expect("expansion filled in").epsilon(p.z());
    let lambda = Complex64::new(info.lambda, 0.0);
    let (a, b) = (lambda + eps, lambda - eps);
    Ok(if a.im >= b.im { [a, b] } else { [b, a] })
}

/// Newton from a seed, tagged as a D-zero seed.
pub fn refine_seed(p: &ProblemParams<f64>, seed: Complex64, cfg: &SolverConfig, clamp: f64) -> Result<Eigenvalue> {
    polish_root(p, seed, cfg, clamp, Origin::DzeroSeed)
}

/// Number of non-real eigenvalues in the configured window, for purely imaginary `z`.
pub fn count_nonreal(p: &ProblemParams<f64>, cfg: &SolverConfig) -> Result<usize> {
    if !matches!(p.coupling, Coupling::Imaginary(_)) {
        return Err(Error::Domain("count_nonreal expects a purely imaginary coupling".into()));
    }
    let roots = solve_rect(p, &cfg.nu_window, cfg)?;
    Ok(roots.iter().filter(|r| r.nu.im.abs() > cfg.imag_tol).map(|r| r.multiplicity).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchStatus {
    Alive,
    Merged,
    ExitedWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub id: usize,
    pub points: Vec<(f64, Complex64)>,
    pub status: BranchStatus,
}

impl Branch {
    pub fn last(&self) -> Complex64 {
        self.points.last().expect("branch has points").1
    }
}

/// Roots of one coupling value, each repeated by its multiplicity.
pub fn expand_multiplicity(roots: &[Eigenvalue]) -> Vec<Complex64> {
    roots.iter().flat_map(|r| std::iter::repeat_n(r.nu, r.multiplicity)).collect()
}

const TIE: f64 = 1e-9;

/// Ordering key of a point for tie-breaks: smaller `|Im|`, then smaller `Re`,
/// then non-negative imaginary part first.
fn tie_key(nu: Complex64) -> (f64, f64, bool) {
    (nu.im.abs(), nu.re, nu.im < 0.0)
}

fn keys_tie(a: Complex64, b: Complex64) -> bool {
    let (ka, kb) = (tie_key(a), tie_key(b));
    (ka.0 - kb.0).abs() <= TIE && (ka.1 - kb.1).abs() <= TIE && ka.2 == kb.2
}

fn cmp_key(a: Complex64, b: Complex64) -> std::cmp::Ordering {
    let (ka, kb) = (tie_key(a), tie_key(b));
    ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.cmp(&kb.2))
}

/// Greedy nearest-neighbour assignment of `roots` to branch endpoints.
/// Returns, for each root, the index into `ends` it continues (if any).
pub fn match_slice(ends: &[Complex64], roots: &[Complex64], radius: f64, r: f64) -> Result<Vec<Option<usize>>> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &e) in ends.iter().enumerate() {
        for (j, &x) in roots.iter().enumerate() {
            let d = (e - x).norm();
            if d <= radius {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(cmp_key(roots[a.2], roots[b.2]))
            .then(cmp_key(ends[a.1], ends[b.1]))
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    let mut branch_used = vec![false; ends.len()];
    let mut assigned = vec![None; roots.len()];
    for (k, &(d, i, j)) in pairs.iter().enumerate() {
        if branch_used[i] || assigned[j].is_some() {
            continue;
        }
        // a competing candidate at the same distance must lose on the tie-breaks
        for &(d2, i2, j2) in &pairs[k + 1..] {
            if d2 - d > TIE {
                break;
            }
            if branch_used[i2] || assigned[j2].is_some() {
                continue;
            }
            let ambiguous = if j2 == j && i2 != i {
                keys_tie(ends[i], ends[i2]) && (ends[i] - ends[i2]).norm() > TIE
            } else if i2 == i && j2 != j {
                keys_tie(roots[j], roots[j2]) && (roots[j] - roots[j2]).norm() > TIE
            } else {
                false
            };
            if ambiguous {
                return Err(Error::MatchAmbiguity { r });
            }
        }
        branch_used[i] = true;
        assigned[j] = Some(i);
    }
    Ok(assigned)
}

/// Links the per-slice root sets of an increasing coupling sweep into branches.
pub fn link_branches(slices: &[(f64, Vec<Complex64>)], window: &RectRegion, radius: f64) -> Result<Vec<Branch>> {
    let mut branches: Vec<Branch> = Vec::new();
    for (r, roots) in slices {
        let alive: Vec<usize> = (0..branches.len()).filter(|&i| branches[i].status == BranchStatus::Alive).collect();
        let ends: Vec<Complex64> = alive.iter().map(|&i| branches[i].last()).collect();
        let assigned = match_slice(&ends, roots, radius, *r)?;
        let mut continued = vec![false; alive.len()];
        for (j, a) in assigned.iter().enumerate() {
            match a {
                Some(k) => {
                    continued[*k] = true;
                    branches[alive[*k]].points.push((*r, roots[j]));
                }
                None => {
                    let id = branches.len();
                    branches.push(Branch { id, points: vec![(*r, roots[j])], status: BranchStatus::Alive });
                }
            }
        }
        for (k, &i) in alive.iter().enumerate() {
            if !continued[k] {
                let near_edge = window.edge_distance(branches[i].last()) <= radius;
                branches[i].status = if near_edge { BranchStatus::ExitedWindow } else { BranchStatus::Merged };
            }
        }
    }
    Ok(branches)
}

/// Eigenvalue branches for `z = i r` over an increasing grid of `r`.
pub fn trajectory(b: f64, r_grid: &[f64], cfg: &SolverConfig) -> Result<Vec<Branch>> {
    Ok(trajectory_with_slices(b, r_grid, cfg)?.0)
}

/// Like [`trajectory`], also returning the solved root sets per `r`.
pub fn trajectory_with_slices(b: f64, r_grid: &[f64], cfg: &SolverConfig) -> Result<(Vec<Branch>, Vec<(f64, Vec<Eigenvalue>)>)> {
    cfg.validate()?;
    if r_grid.is_empty() || r_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("r grid must be non-empty and strictly increasing".into()));
    }
    let solved: Vec<(f64, Vec<Eigenvalue>)> = r_grid
        .par_iter()
        .map(|&r| {
            let p = ProblemParams::new(b, Coupling::Imaginary(r))?;
            Ok((r, solve_rect(&p, &cfg.nu_window, cfg)?))
        })
        .collect::<Result<_>>()?;
    let slices: Vec<(f64, Vec<Complex64>)> = solved.iter().map(|(r, e)| (*r, expand_multiplicity(e))).collect();
    let branches = link_branches(&slices, &cfg.nu_window, cfg.match_radius)?;
    Ok((branches, solved))
}

/// Eigenvalue data expressed for `-y'' + x^2 y + z_ho [delta(x - b_ho) - delta(x + b_ho)] y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoSpectrum {
    pub z_ho: Complex64,
    pub b_ho: f64,
    pub eigenvalues: Vec<Complex64>,
}

/// Maps Weber-form data to harmonic-oscillator form: `z_ho = z sqrt 2`, `b_ho = b / sqrt 2`, `lambda = 2 nu + 1`.
pub fn to_harmonic_oscillator(eigs: &[Eigenvalue], p: &ProblemParams<f64>) -> HoSpectrum {
    let (b_ho, z_ho) = p.to_harmonic_oscillator();
    HoSpectrum {
        z_ho: z_ho.value(),
        b_ho,
        eigenvalues: eigs.iter().map(|e| e.nu * 2.0 + 1.0).collect(),
    }
}

/// Inverse of [`to_harmonic_oscillator`]: Weber parameters and `nu = (lambda - 1)/2`.
pub fn from_harmonic_oscillator(ho: &HoSpectrum) -> Result<(ProblemParams<f64>, Vec<Complex64>)> {
    let p = ProblemParams::from_harmonic_oscillator(ho.b_ho, Coupling::Complex(ho.z_ho))?;
    Ok((p, ho.eigenvalues.iter().map(|l| (l - 1.0) * 0.5).collect()))
}
