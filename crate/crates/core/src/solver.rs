//! Bound states, λ plateaus, N convergence and critical screening.

use crate::basis::{h0_matrix, overlap_matrix, BasisSpec};
use crate::eigen::{rayleigh_refine, solve_pencil, Pencil};
use crate::error::{Error, Result};
use crate::par;
use crate::potentials::{PotentialSpec, YukawaParams};

/// Eigenvalues within this distance of zero are neither bound nor continuum.
pub const ZERO_BAND: f64 = 1e-12;
/// Trailing coefficients inspected by the truncation guard.
pub const TAIL_COEFFS: usize = 10;
/// A level with more than this share of its S-norm in the tail is unconverged.
pub const TAIL_FRACTION: f64 = 0.5;
pub const DEFAULT_PLATEAU_TOL: f64 = 1e-9;
pub const DEFAULT_CONV_TOL: f64 = 1e-12;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-4;
/// Smallest plateau window, in grid points.
pub const MIN_PLATEAU_POINTS: usize = 5;

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// All pencil eigenvalues, ascending.
    pub energies: Vec<f64>,
    /// Eigenvalues below `-ZERO_BAND`, ascending.
    pub bound: Vec<f64>,
    /// Eigenvalues within `ZERO_BAND` of zero.
    pub unresolved: Vec<f64>,
    /// Indices into `bound` whose eigenvectors fail the tail guard.
    pub unconverged: Vec<usize>,
    /// Estimated condition number of the overlap matrix.
    pub s_condition: f64,
    pub basis: BasisSpec,
    pub potential: PotentialSpec,
}

impl SpectrumResult {
    /// The `k` lowest eigenvalues (fewer if the basis is smaller).
    pub fn lowest(&self, k: usize) -> &[f64] {
        &self.energies[..k.min(self.energies.len())]
    }
}

/// `(H₀ + V, S)` for `potential` in `basis`.
pub fn assemble(potential: &PotentialSpec, basis: &BasisSpec) -> Result<Pencil> {
    potential.check_basis(basis)?;
    let v = potential.matrix(basis)?;
    Pencil::new(h0_matrix(basis).add(&v)?, overlap_matrix(basis))
}

fn classify(energies: Vec<f64>, tails: &[f64], s_condition: f64, basis: &BasisSpec, potential: &PotentialSpec) -> SpectrumResult {
    let bound: Vec<f64> = energies.iter().copied().filter(|&e| e < -ZERO_BAND).collect();
    let unresolved = energies.iter().copied().filter(|e| e.abs() <= ZERO_BAND).collect();
    let unconverged = (0..bound.len()).filter(|&i| tails.get(i).is_some_and(|&t| t > TAIL_FRACTION)).collect();
    SpectrumResult { energies, bound, unresolved, unconverged, s_condition, basis: *basis, potential: *potential }
}

fn solve_assembled(pencil: &Pencil, basis: &BasisSpec, potential: &PotentialSpec) -> Result<SpectrumResult> {
    let n = pencil.dim();
    let guard = n > TAIL_COEFFS;
    let mut sol = solve_pencil(pencil, guard)?;
    let nbound = sol.values.iter().take_while(|&&e| e < 0.0).count();
    rayleigh_refine(pencil, &mut sol, nbound);
    let mut tails = Vec::new();
    if let Some(vecs) = &sol.vectors {
        let s = pencil.s();
        let nbound = sol.values.iter().take_while(|&&e| e < -ZERO_BAND).count();
        for c in 0..nbound {
            let mut tail = vec![0.0; n];
            for i in n - TAIL_COEFFS..n {
                tail[i] = vecs[(i, c)];
            }
            let st = s.mul_vec(&tail);
            tails.push(tail.iter().zip(&st).map(|(a, b)| a * b).sum::<f64>());
        }
    }
    Ok(classify(sol.values, &tails, sol.s_condition, basis, potential))
}

/// Spectrum of `H₀ + V` over `S` with the analytic potential matrix.
pub fn bound_states(potential: &PotentialSpec, basis: &BasisSpec) -> Result<SpectrumResult> {
    let pencil = assemble(potential, basis)?;
    solve_assembled(&pencil, basis, potential)
}

/// Exact Kratzer level `-A²/2 (n + 1/2 + sqrt(B + ℓ²))^{-2}`.
pub fn kratzer_exact(coulomb: f64, b: f64, ell: i32, n: usize) -> Result<f64> {
    let l2 = (ell as f64).powi(2);
    if !(b + l2 > 0.0) {
        return Err(Error::domain("kratzer_exact", format!("B + ell^2 = {} must be > 0", b + l2)));
    }
    let d = n as f64 + 0.5 + (b + l2).sqrt();
    Ok(-0.5 * coulomb * coulomb / (d * d))
}

#[derive(Debug, Clone)]
pub struct PlateauReport {
    pub grid: Vec<f64>,
    /// `traces[i]` holds the `k` lowest eigenvalues at `grid[i]`.
    pub traces: Vec<Vec<f64>>,
    /// Inclusive index range of the plateau in `grid`.
    pub plateau: Option<(usize, usize)>,
    /// Relative spread of each tracked level inside the plateau.
    pub spread: Vec<f64>,
    pub tol: f64,
}

impl PlateauReport {
    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.plateau.map(|(a, b)| (self.grid[a], self.grid[b]))
    }

    /// Number of grid points in the plateau (0 when absent).
    pub fn width(&self) -> usize {
        self.plateau.map_or(0, |(a, b)| b - a + 1)
    }

    pub fn max_spread(&self) -> Option<f64> {
        self.plateau.map(|_| self.spread.iter().copied().fold(0.0, f64::max))
    }
}

fn level_spread(traces: &[Vec<f64>], lo: usize, hi: usize, level: usize) -> Option<f64> {
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in &traces[lo..=hi] {
        let e = *t.get(level)?;
        if !(e < -ZERO_BAND) {
            return None;
        }
        min = min.min(e);
        max = max.max(e);
    }
    Some((max - min) / min.abs().max(max.abs()))
}

/// Widest window of at least [`MIN_PLATEAU_POINTS`] consecutive points in
/// which each of the first `k` levels is bound and has relative spread
/// `<= tol`. Ties go to the window at smaller λ.
pub fn detect_plateau(traces: &[Vec<f64>], k: usize, tol: f64) -> Option<((usize, usize), Vec<f64>)> {
    let ok = |lo: usize, hi: usize| (0..k).all(|l| level_spread(traces, lo, hi, l).is_some_and(|s| s <= tol));
    let mut best: Option<(usize, usize)> = None;
    for lo in 0..traces.len() {
        if !ok(lo, lo) {
            continue;
        }
        let mut hi = lo;
        while hi + 1 < traces.len() && ok(lo, hi + 1) {
            hi += 1;
        }
        let width = hi - lo + 1;
        if width >= MIN_PLATEAU_POINTS && best.is_none_or(|(a, b)| width > b - a + 1) {
            best = Some((lo, hi));
        }
    }
    best.map(|(lo, hi)| ((lo, hi), (0..k).map(|l| level_spread(traces, lo, hi, l).unwrap_or(f64::NAN)).collect()))
}

/// Solves at every λ in `grid` and locates the stability plateau.
pub fn lambda_scan(potential: &PotentialSpec, template: &BasisSpec, grid: &[f64], k: usize, tol: f64) -> Result<PlateauReport> {
    if grid.len() < MIN_PLATEAU_POINTS {
        return Err(Error::domain("lambda_scan", format!("grid has {} points, need at least {MIN_PLATEAU_POINTS}", grid.len())));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("lambda_scan", "grid must be strictly ascending"));
    }
    if k == 0 {
        return Err(Error::domain("lambda_scan", "k must be >= 1"));
    }
    let results = par::map_slice(grid, |&lambda| {
        let basis = template.with_lambda(lambda)?;
        bound_states(potential, &basis).map(|r| r.lowest(k).to_vec())
    });
    let traces = results.into_iter().collect::<Result<Vec<_>>>()?;
    let found = detect_plateau(&traces, k, tol);
    log::debug!("lambda scan over {} points: plateau {:?}", grid.len(), found.as_ref().map(|f| f.0));
    let (plateau, spread) = match found {
        Some((range, spread)) => (Some(range), spread),
        None => (None, Vec::new()),
    };
    Ok(PlateauReport { grid: grid.to_vec(), traces, plateau, spread, tol })
}

/// Picks the λ in `grid` minimizing the sum of the `k` lowest eigenvalues
/// (the variational optimum) and returns it with its spectrum.
pub fn variational_lambda(
    potential: &PotentialSpec,
    template: &BasisSpec,
    grid: &[f64],
    k: usize,
) -> Result<(f64, SpectrumResult)> {
    if grid.is_empty() || k == 0 {
        return Err(Error::domain("variational_lambda", "need a non-empty grid and k >= 1"));
    }
    let results = par::map_slice(grid, |&lambda| bound_states(potential, &template.with_lambda(lambda)?));
    let mut best: Option<(f64, f64, SpectrumResult)> = None;
    for (&lambda, r) in grid.iter().zip(results) {
        let r = r?;
        let score: f64 = r.lowest(k).iter().sum();
        if best.as_ref().is_none_or(|b| score < b.1) {
            best = Some((lambda, score, r));
        }
    }
    let (lambda, _, r) = best.expect("grid is non-empty");
    Ok((lambda, r))
}

/// Per-level variational choice of λ: for each of the `k` lowest levels, the
/// grid point with the lowest eigenvalue. Every computed level is an upper
/// bound on the exact one for any λ, so the minimum is the tightest bound on
/// the grid. Returns `(λ, E)` per level; a level absent at every grid point
/// (basis smaller than `k`) ends the list.
pub fn variational_levels(potential: &PotentialSpec, template: &BasisSpec, grid: &[f64], k: usize) -> Result<Vec<(f64, f64)>> {
    if grid.is_empty() || k == 0 {
        return Err(Error::domain("variational_levels", "need a non-empty grid and k >= 1"));
    }
    let results = par::map_slice(grid, |&lambda| {
        let basis = template.with_lambda(lambda)?;
        bound_states(potential, &basis).map(|r| r.lowest(k).to_vec())
    });
    let traces = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(k);
    for level in 0..k {
        let best = grid.iter().zip(&traces).filter_map(|(&l, t)| t.get(level).map(|&e| (l, e))).fold(
            None,
            |acc: Option<(f64, f64)>, (l, e)| match acc {
                Some((_, be)) if be <= e => acc,
                _ => Some((l, e)),
            },
        );
        match best {
            Some(b) => out.push(b),
            None => break,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub sizes: Vec<usize>,
    /// `traces[i]` holds the `k` lowest eigenvalues at `sizes[i]`.
    pub traces: Vec<Vec<f64>>,
    /// Per level, the first size whose value is within `tol` of the previous size.
    pub converged_at: Vec<Option<usize>>,
    pub tol: f64,
}

/// Eigenvalue traces over basis sizes. The pencil is assembled once at the
/// largest size; smaller pencils are its leading blocks.
pub fn converge_in_n(
    potential: &PotentialSpec,
    template: &BasisSpec,
    sizes: &[usize],
    k: usize,
    tol: f64,
) -> Result<ConvergenceTable> {
    if sizes.is_empty() || sizes.windows(2).any(|w| !(w[0] < w[1])) || sizes[0] == 0 {
        return Err(Error::domain("converge_in_n", "sizes must be non-empty, positive and strictly ascending"));
    }
    let full_basis = template.with_size(*sizes.last().expect("non-empty"))?;
    let full = assemble(potential, &full_basis)?;
    let results = par::map_slice(sizes, |&n| {
        let p = Pencil::new(full.h().truncated(n), full.s().truncated(n))?;
        let mut sol = solve_pencil(&p, true)?;
        rayleigh_refine(&p, &mut sol, k);
        Ok(sol.values.into_iter().take(k).collect::<Vec<_>>())
    });
    let traces = results.into_iter().collect::<Result<Vec<_>>>()?;
    let converged_at = (0..k)
        .map(|l| {
            (1..sizes.len()).find_map(|i| match (traces[i - 1].get(l), traces[i].get(l)) {
                (Some(a), Some(b)) if (a - b).abs() <= tol => Some(sizes[i]),
                _ => None,
            })
        })
        .collect();
    Ok(ConvergenceTable { sizes: sizes.to_vec(), traces, converged_at, tol })
}

fn bound_count(template: &YukawaParams, basis: &BasisSpec, delta: f64) -> Result<usize> {
    let p = PotentialSpec::Yukawa(template.with_delta(delta)?);
    Ok(bound_states(&p, basis)?.bound.len())
}

/// Screening `δ` at which level `level` (0-based) leaves the spectrum,
/// by bisection on the bound-state count. The level must be bound at
/// `bracket.0` and unbound at `bracket.1`.
pub fn critical_screening(
    template: &YukawaParams,
    basis: &BasisSpec,
    level: usize,
    bracket: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let invalid = |reason: String| Error::InvalidBracket { lo: bracket.0, hi: bracket.1, reason };
    if !(lo < hi) || !(tol > 0.0) {
        return Err(invalid("need lo < hi and tol > 0".into()));
    }
    let (at_lo, at_hi) = (bound_count(template, basis, lo)?, bound_count(template, basis, hi)?);
    if at_lo <= level {
        return Err(invalid(format!("level {level} is not bound at lower end ({at_lo} bound)")));
    }
    if at_hi > level {
        return Err(invalid(format!("level {level} is still bound at upper end ({at_hi} bound)")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if bound_count(template, basis, mid)? > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
