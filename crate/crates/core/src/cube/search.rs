//! Multi-start search for the normal that maximizes the cut distance `f`.
//!
//! The normal is parametrized by an unconstrained `y ∈ Rⁿ` through
//! `w = |y| / ‖y‖`, which covers the positive orthant of the sphere and lets
//! a plain Nelder–Mead run without constraints. Starts come from a small
//! lattice of the orthant, from seeded random directions and from the
//! sub-diagonal normals `(1,…,1,0,…,0)/√k`, which are also scored directly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nelder_mead::{minimize, NelderMeadOptions};
use crate::types::Probability;

use super::{cut_distance_for_normal, CubeConfig, NormalVector};

/// Dimensions supported by the search.
pub const SEARCH_DIMS: std::ops::RangeInclusive<usize> = 2..=8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub cube: CubeConfig,
    /// Random starts on top of the lattice starts.
    pub restarts: usize,
    pub seed: u64,
    /// Threads used for the starts; the result does not depend on it.
    pub workers: usize,
    /// Nonzero coordinates closer than this count as equal.
    pub equal_tol: f64,
    /// Distances closer than this count as tied.
    pub tie_tol: f64,
    /// Objective evaluations per Nelder–Mead run.
    pub max_evals: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            cube: CubeConfig::default(),
            restarts: 32,
            seed: 0,
            workers: 1,
            equal_tol: 1e-3,
            tie_tol: 1e-9,
            max_evals: 3000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubDiagonalCandidate {
    pub k: usize,
    pub distance: f64,
}

/// Outcome of [`conjecture3_search`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub epsilon: Probability,
    /// Best normal found, coordinates sorted in decreasing order.
    pub best_normal: NormalVector,
    pub best_distance: f64,
    pub equal_nonzero_coords: bool,
    pub tolerance_used: f64,
    /// `f` at `(1,…,1,0,…,0)/√k` for every `k`.
    pub candidates: Vec<SubDiagonalCandidate>,
    pub best_candidate: SubDiagonalCandidate,
    /// A normal with unequal nonzero coordinates beat every sub-diagonal
    /// candidate by more than the tie tolerance.
    pub counterexample: bool,
    pub seed: u64,
    pub starts: usize,
}

#[derive(Debug, Clone)]
struct Found {
    normal: Vec<f64>,
    distance: f64,
}

impl Found {
    fn nonzero(&self) -> usize {
        let max = self.normal.iter().copied().fold(0.0, f64::max);
        self.normal.iter().filter(|&&w| w > 0.0 && w > 1e-9 * max).count()
    }
}

fn to_normal(y: &[f64]) -> Option<Vec<f64>> {
    let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return None;
    }
    Some(y.iter().map(|v| v.abs() / norm).collect())
}

fn evaluate(w: &[f64], epsilon: f64, cfg: &CubeConfig) -> Result<f64> {
    // `w` is unit length up to rounding; renormalize to be safe.
    let normal = NormalVector::from_direction(w)?;
    cut_distance_for_normal(&normal, epsilon, cfg)
}

/// Sorted-descending tuples over {0, 1, 2}, excluding the zero vector.
fn lattice(n: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, max: u32, prefix: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == n {
            if prefix.iter().any(|&v| v > 0.0) {
                out.push(prefix.clone());
            }
            return;
        }
        for v in (0..=max).rev() {
            prefix.push(v as f64);
            rec(n, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 2, &mut Vec::with_capacity(n), &mut out);
    out
}

fn random_start(n: usize, seed: u64, index: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).map(|v: f64| v.abs()).collect()
}

fn local_search(start: &[f64], epsilon: f64, cfg: &SearchConfig) -> Option<Found> {
    let objective = |y: &[f64]| match to_normal(y) {
        Some(w) => evaluate(&w, epsilon, &cfg.cube).map(|f| -f).unwrap_or(f64::INFINITY),
        None => f64::INFINITY,
    };
    let opts = NelderMeadOptions { initial_step: 0.25, f_tol: 1e-14, x_tol: 1e-9, max_evals: cfg.max_evals };
    let min = minimize(objective, start, opts);
    let normal = to_normal(&min.x)?;
    min.value.is_finite().then(|| Found { normal, distance: -min.value })
}

/// Sets coordinates below `frac * max` to zero while that does not lower `f`
/// by more than the tie tolerance.
fn snap_small_coordinates(found: Found, epsilon: f64, cfg: &SearchConfig) -> Found {
    let max = found.normal.iter().copied().fold(0.0, f64::max);
    let snapped: Vec<f64> = found.normal.iter().map(|&w| if w < 1e-3 * max { 0.0 } else { w }).collect();
    if snapped == found.normal {
        return found;
    }
    match evaluate(&snapped, epsilon, &cfg.cube) {
        Ok(f) if f >= found.distance - cfg.tie_tol => {
            Found { normal: NormalVector::from_direction(&snapped).map(Vec::from).unwrap_or(snapped), distance: f }
        }
        _ => found,
    }
}

/// Replaces `incumbent` only if `challenger` is better by more than the tie
/// tolerance, or tied with fewer nonzero coordinates.
fn better(incumbent: Found, challenger: Found, tie_tol: f64) -> Found {
    if challenger.distance > incumbent.distance + tie_tol {
        return challenger;
    }
    if challenger.distance >= incumbent.distance - tie_tol && challenger.nonzero() < incumbent.nonzero() {
        return challenger;
    }
    incumbent
}

fn nonzero_coords_equal(w: &[f64], tol: f64) -> bool {
    let max = w.iter().copied().fold(0.0, f64::max);
    let nonzero: Vec<f64> = w.iter().copied().filter(|&v| v > 1e-9 * max).collect();
    let lo = nonzero.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = nonzero.iter().copied().fold(0.0, f64::max);
    hi - lo <= tol
}

/// Maximizes `f` over unit normals in the positive orthant of `Rⁿ`.
pub fn conjecture3_search_with(n: usize, epsilon: f64, cfg: &SearchConfig) -> Result<ConjectureReport> {
    if !SEARCH_DIMS.contains(&n) {
        return Err(Error::capability(format!(
            "conjecture search supports {} <= n <= {}, got {n}",
            SEARCH_DIMS.start(),
            SEARCH_DIMS.end()
        )));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    if cfg.workers == 0 {
        return Err(Error::domain("workers must be >= 1"));
    }

    let mut candidates = Vec::with_capacity(n);
    let mut found = Vec::with_capacity(n);
    for k in 1..=n {
        let normal = NormalVector::sub_diagonal(n, k)?;
        let distance = cut_distance_for_normal(&normal, epsilon, &cfg.cube)?;
        candidates.push(SubDiagonalCandidate { k, distance });
        found.push(Found { normal: normal.into(), distance });
    }
    let best_candidate = candidates
        .iter()
        .copied()
        .fold(candidates[0], |best, c| if c.distance > best.distance + cfg.tie_tol { c } else { best });

    let mut starts = lattice(n);
    starts.extend((0..cfg.restarts).map(|r| random_start(n, cfg.seed, r)));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::capability(format!("cannot start worker pool: {e}")))?;
    let local: Vec<Option<Found>> =
        pool.install(|| starts.par_iter().map(|s| local_search(s, epsilon, cfg)).collect());
    found.extend(local.into_iter().flatten().map(|f| snap_small_coordinates(f, epsilon, cfg)));

    let mut best = found
        .into_iter()
        .reduce(|a, b| better(a, b, cfg.tie_tol))
        .expect("sub-diagonal candidates are always present");
    best.normal.sort_by(|a, b| b.total_cmp(a));

    let equal = nonzero_coords_equal(&best.normal, cfg.equal_tol);
    let counterexample = !equal && best.distance > best_candidate.distance + cfg.tie_tol;
    Ok(ConjectureReport {
        n,
        epsilon: Probability::new(epsilon)?,
        best_normal: NormalVector::from_direction(&best.normal)?,
        best_distance: best.distance,
        equal_nonzero_coords: equal,
        tolerance_used: cfg.equal_tol,
        candidates,
        best_candidate,
        counterexample,
        seed: cfg.seed,
        starts: starts.len(),
    })
}

/// [`conjecture3_search_with`] with default settings, `restarts` random
/// starts and the given seed.
pub fn conjecture3_search(n: usize, epsilon: f64, restarts: usize, seed: u64) -> Result<ConjectureReport> {
    conjecture3_search_with(n, epsilon, &SearchConfig { restarts, seed, ..Default::default() })
}
