//! Halfspace cuts of the unit cube `[0, 1]^n`.
//!
//! For a unit normal `w` with nonnegative entries and a volume `ε < 1/2`,
//! the corner cut `{w·x <= t}` of volume `ε` and its mirror image through the
//! centre are separated by `f(w) = Σw - 2t`. Along the main diagonal the cut
//! volume is an Irwin–Hall CDF and `f` converges to `-Φ⁻¹(ε)/√3`.

mod search;
mod volume;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{check_dimension, Error, Result};
use crate::mc::{estimate_halfspace_volume, McConfig, McTarget};
use crate::roots::{solve_increasing, RootOptions};
use crate::specfun::{irwin_hall_quantile_with, std_normal_quantile};
use crate::types::{Method, VolumeEstimate};

pub(crate) use volume::ExactCut;

pub use search::{conjecture3_search, conjecture3_search_with, ConjectureReport, SearchConfig, SubDiagonalCandidate};

/// Allowed deviation of `|w|` from one.
pub const NORM_TOL: f64 = 1e-12;

/// A unit normal in the closed positive orthant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NormalVector(Vec<f64>);

impl NormalVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        check_components(&components)?;
        let norm = components.iter().map(|w| w * w).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!("normal must have unit length, got |w| = {norm}")));
        }
        Ok(Self(components))
    }

    /// Scales a nonnegative, nonzero direction to unit length.
    pub fn from_direction(direction: &[f64]) -> Result<Self> {
        check_components(direction)?;
        let norm = direction.iter().map(|w| w * w).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::domain("direction must be nonzero"));
        }
        Ok(Self(direction.iter().map(|w| w / norm).collect()))
    }

    /// `(1, …, 1)/√n`.
    pub fn diagonal(n: usize) -> Result<Self> {
        Self::sub_diagonal(n, n)
    }

    /// `(1, …, 1, 0, …, 0)/√k` with `k` leading ones.
    pub fn sub_diagonal(n: usize, k: usize) -> Result<Self> {
        check_dimension(n, 1)?;
        if k == 0 || k > n {
            return Err(Error::domain(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let w = 1.0 / (k as f64).sqrt();
        Ok(Self((0..n).map(|i| if i < k { w } else { 0.0 }).collect()))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

fn check_components(components: &[f64]) -> Result<()> {
    if components.is_empty() {
        return Err(Error::domain("normal must have at least one component"));
    }
    if let Some(bad) = components.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::domain(format!("normal components must be finite and >= 0, got {bad}")));
    }
    Ok(())
}

impl TryFrom<Vec<f64>> for NormalVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<NormalVector> for Vec<f64> {
    fn from(n: NormalVector) -> Self {
        n.0
    }
}

/// `{x ∈ [0,1]^n : normal·x <= threshold}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeCutSpec {
    pub normal: NormalVector,
    pub threshold: f64,
}

impl CubeCutSpec {
    pub fn new(normal: NormalVector, threshold: f64) -> Result<Self> {
        let total = normal.sum();
        if !(threshold >= 0.0 && threshold <= total * (1.0 + 1e-12)) {
            return Err(Error::domain(format!("threshold must lie in [0, {total}], got {threshold}")));
        }
        Ok(Self { normal, threshold: threshold.min(total) })
    }

    /// The diagonal cut `{Σxᵢ <= a}`.
    pub fn diagonal(n: usize, a: f64) -> Result<Self> {
        Self::new(NormalVector::diagonal(n)?, a / (n as f64).sqrt())
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }
}

/// Configuration of the cube-cut volume backends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubeConfig {
    pub tol: ToleranceConfig,
    /// Largest reduced dimension handled by the exact `2^n` sum.
    pub exact_max_n: usize,
    /// Components at or below `zero_tol * max_i wᵢ` are treated as zero.
    pub zero_tol: f64,
    /// Monte Carlo fallback above `exact_max_n`; `None` makes that a
    /// capability error.
    pub monte_carlo: Option<McConfig>,
}

impl Default for CubeConfig {
    fn default() -> Self {
        Self { tol: ToleranceConfig::default(), exact_max_n: 25, zero_tol: 1e-9, monte_carlo: None }
    }
}

/// Which limit constant for the diagonal distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitVariant {
    /// `-Φ⁻¹(ε)/6`: the sum normalized by its variance.
    Paper,
    /// `-Φ⁻¹(ε)/√3`: the sum normalized by its standard deviation.
    Corrected,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    Ok(())
}

/// `a(n)` with `vol{Σxᵢ <= a} = ε`.
pub fn diag_cut_threshold(n: usize, epsilon: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_dimension(n, 1)?;
    check_epsilon(epsilon)?;
    irwin_hall_quantile_with(n, epsilon, cfg)
}

/// `√n - 2a(n)/√n`, the gap between opposite diagonal cuts of volume `ε`.
pub fn diag_cut_distance(n: usize, epsilon: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_dimension(n, 1)?;
    check_epsilon(epsilon)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    let a = diag_cut_threshold(n, epsilon, cfg)?;
    let root_n = (n as f64).sqrt();
    Ok((root_n - 2.0 * a / root_n).max(0.0))
}

/// Large-`n` limit of [`diag_cut_distance`].
pub fn diag_distance_limit(epsilon: f64, variant: LimitVariant) -> Result<f64> {
    check_epsilon(epsilon)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    let b = std_normal_quantile(epsilon)?;
    Ok(match variant {
        LimitVariant::Paper => -b / 6.0,
        LimitVariant::Corrected => -b / 3f64.sqrt(),
    })
}

/// Drops components at or below `zero_tol * max`, then rescales the normal
/// and threshold so the normal has unit length again.
pub fn reduce_cut(cut: &CubeCutSpec, zero_tol: f64) -> Result<CubeCutSpec> {
    let w = cut.normal.components();
    let max = w.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::domain("all normal components are zero"));
    }
    let kept: Vec<f64> = w.iter().copied().filter(|&x| x > zero_tol * max).collect();
    let norm = kept.iter().map(|x| x * x).sum::<f64>().sqrt();
    let normal = NormalVector(kept.iter().map(|x| x / norm).collect());
    let threshold = (cut.threshold / norm).clamp(0.0, normal.sum());
    Ok(CubeCutSpec { normal, threshold })
}

fn exact_backend(normal: &NormalVector, cfg: &CubeConfig) -> Result<ExactCut> {
    if normal.dim() > cfg.exact_max_n {
        return Err(Error::capability(format!(
            "exact cube-cut volume supports at most {} nonzero coordinates, got {}",
            cfg.exact_max_n,
            normal.dim()
        )));
    }
    Ok(ExactCut::new(normal.components()))
}

/// Volume of a halfspace cut of the unit cube.
pub fn halfspace_cube_volume(cut: &CubeCutSpec, cfg: &CubeConfig) -> Result<VolumeEstimate> {
    let reduced = reduce_cut(cut, cfg.zero_tol)?;
    if reduced.dim() > cfg.exact_max_n {
        return match cfg.monte_carlo {
            Some(mc) => {
                let est = estimate_halfspace_volume(&McTarget::CubeCut(cut.clone()), &mc)?;
                Ok(VolumeEstimate::new(est.mean, Method::MonteCarlo, 3.0 * est.std_error))
            }
            None => Err(exact_backend(&reduced.normal, cfg).unwrap_err()),
        };
    }
    let exact = ExactCut::new(reduced.normal.components());
    Ok(VolumeEstimate::new(exact.volume(reduced.threshold), Method::Exact, 0.5 * f64::EPSILON))
}

/// The threshold `t` with `vol{w·x <= t} = ε` for an already-reduced normal.
fn threshold_for_volume(cut: &ExactCut, epsilon: f64, tol: &ToleranceConfig) -> Result<f64> {
    let half = 0.5 * cut.total();
    solve_increasing(
        |t| Ok((cut.volume(t), cut.density(t))),
        0.0,
        half,
        epsilon,
        RootOptions::new(tol.root_abs_tol, 1e-4 * half),
    )
}

/// The threshold `t` with `vol{w·x <= t} = ε` for a unit normal `w`.
pub fn cut_threshold_for_normal(normal: &NormalVector, epsilon: f64, cfg: &CubeConfig) -> Result<f64> {
    check_epsilon(epsilon)?;
    let reduced = reduce_cut(&CubeCutSpec { normal: normal.clone(), threshold: 0.0 }, cfg.zero_tol)?;
    let exact = exact_backend(&reduced.normal, cfg)?;
    // Undo the rescaling done by the reduction.
    let max = normal.components().iter().copied().fold(0.0, f64::max);
    let kept_norm = normal
        .components()
        .iter()
        .filter(|&&x| x > cfg.zero_tol * max)
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    let t = if epsilon == 0.5 {
        0.5 * exact.total()
    } else if epsilon > 0.5 {
        exact.total() - threshold_for_volume(&exact, 1.0 - epsilon, &cfg.tol)?
    } else {
        threshold_for_volume(&exact, epsilon, &cfg.tol)?
    };
    Ok(t * kept_norm)
}

/// `f(w)`: the distance between the volume-`ε` cut `{w·x <= t}` and its
/// reflection through the cube centre.
pub fn cut_distance_for_normal(normal: &NormalVector, epsilon: f64, cfg: &CubeConfig) -> Result<f64> {
    check_epsilon(epsilon)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    let reduced = reduce_cut(&CubeCutSpec { normal: normal.clone(), threshold: 0.0 }, cfg.zero_tol)?;
    let exact = exact_backend(&reduced.normal, cfg)?;
    let t = threshold_for_volume(&exact, epsilon, &cfg.tol)?;
    Ok((exact.total() - 2.0 * t).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn cfg() -> CubeConfig {
        CubeConfig::default()
    }

    #[test]
    fn normal_validation() {
        assert!(NormalVector::new(vec![0.6, 0.8]).is_ok());
        assert!(NormalVector::new(vec![0.6, 0.7]).is_err());
        assert!(NormalVector::new(vec![-0.6, 0.8]).is_err());
        assert!(NormalVector::new(vec![]).is_err());
        assert!(NormalVector::from_direction(&[0.0, 0.0]).is_err());
        let d = NormalVector::from_direction(&[3.0, 4.0]).unwrap();
        assert_eq!(d.components(), &[0.6, 0.8]);
        assert!(CubeCutSpec::new(d.clone(), 1.5).is_err());
        assert!(CubeCutSpec::new(d, -0.1).is_err());
    }

    #[test]
    fn diagonal_threshold_and_distance() {
        let tol = ToleranceConfig::default();
        assert!((diag_cut_threshold(3, 1.0 / 6.0, &tol).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(diag_cut_threshold(9, 0.5, &tol).unwrap(), 4.5);
        // CLT prediction 50 - 1.28155 √(100/12) = 46.30; exact value from mpmath.
        let a = diag_cut_threshold(100, 0.1, &tol).unwrap();
        assert!((a - 46.297_960_246_255_2).abs() < 1e-9);
        assert!((a - (50.0 - 1.281_551_565_5 * (100.0f64 / 12.0).sqrt())).abs() < 0.05);
        for &eps in &[0.05, 0.2, 0.45] {
            assert!((diag_cut_distance(1, eps, &tol).unwrap() - (1.0 - 2.0 * eps)).abs() < 1e-12);
        }
        let expected = 3f64.sqrt() - 2.0 / 3f64.sqrt();
        assert!((diag_cut_distance(3, 1.0 / 6.0, &tol).unwrap() - expected).abs() < 1e-10);
        assert_eq!(diag_cut_distance(4, 0.5, &tol).unwrap(), 0.0);
        assert!(diag_cut_distance(4, 1.0, &tol).is_err());
    }

    #[test]
    fn limit_variants() {
        assert_eq!(diag_distance_limit(0.5, LimitVariant::Paper).unwrap(), 0.0);
        let b = 1.281_551_565_544_600_5;
        assert!((diag_distance_limit(0.1, LimitVariant::Paper).unwrap() - b / 6.0).abs() < 1e-14);
        assert!((diag_distance_limit(0.1, LimitVariant::Corrected).unwrap() - b / 3f64.sqrt()).abs() < 1e-14);
        assert!(diag_distance_limit(0.0, LimitVariant::Corrected).is_err());
    }

    #[test]
    fn general_cut_examples() {
        let cut = CubeCutSpec::new(NormalVector::new(vec![0.6, 0.8]).unwrap(), 0.6).unwrap();
        let v = halfspace_cube_volume(&cut, &cfg()).unwrap();
        assert!((v.value - 0.375).abs() < 1e-12);
        assert_eq!(v.method, Method::Exact);

        let w = NormalVector::from_direction(&[0.3, 0.1, 0.7, 0.2]).unwrap();
        let whole = CubeCutSpec::new(w.clone(), w.sum()).unwrap();
        assert_eq!(halfspace_cube_volume(&whole, &cfg()).unwrap().value, 1.0);
        let centre = CubeCutSpec::new(w.clone(), 0.5 * w.sum()).unwrap();
        assert!((halfspace_cube_volume(&centre, &cfg()).unwrap().value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reduction_examples() {
        let cut = CubeCutSpec::new(NormalVector::new(vec![1.0, 0.0]).unwrap(), 0.3).unwrap();
        let reduced = reduce_cut(&cut, 1e-9).unwrap();
        assert_eq!(reduced.normal.components(), &[1.0]);
        assert!((halfspace_cube_volume(&cut, &cfg()).unwrap().value - 0.3).abs() < 1e-15);

        let s = 1.0 / SQRT_2;
        let with_zero = CubeCutSpec::new(NormalVector::new(vec![s, s, 0.0]).unwrap(), 0.4).unwrap();
        let flat = CubeCutSpec::new(NormalVector::new(vec![s, s]).unwrap(), 0.4).unwrap();
        let a = halfspace_cube_volume(&with_zero, &cfg()).unwrap().value;
        let b = halfspace_cube_volume(&flat, &cfg()).unwrap().value;
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn capability_error_above_cap() {
        let cfg = CubeConfig { exact_max_n: 4, ..Default::default() };
        let cut = CubeCutSpec::diagonal(6, 2.0).unwrap();
        assert!(matches!(halfspace_cube_volume(&cut, &cfg), Err(Error::Capability(_))));
        assert!(matches!(
            cut_distance_for_normal(&NormalVector::diagonal(6).unwrap(), 0.1, &cfg),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn monte_carlo_fallback_above_cap() {
        let mc = McConfig { seed: 7, samples: 200_000, workers: 2 };
        let cfg = CubeConfig { exact_max_n: 4, monte_carlo: Some(mc), ..Default::default() };
        let cut = CubeCutSpec::diagonal(6, 2.0).unwrap();
        let est = halfspace_cube_volume(&cut, &cfg).unwrap();
        assert_eq!(est.method, Method::MonteCarlo);
        let exact = crate::specfun::irwin_hall_cdf(6, 2.0).unwrap();
        assert!((est.value - exact).abs() <= est.abs_error);
    }

    #[test]
    fn distance_examples() {
        assert!((cut_distance_for_normal(&NormalVector::new(vec![1.0]).unwrap(), 0.2, &cfg()).unwrap() - 0.6).abs() < 1e-12);
        // Corner triangle of area s²/2 = 0.02 gives s = 0.2.
        let diag2 = NormalVector::diagonal(2).unwrap();
        let f = cut_distance_for_normal(&diag2, 0.02, &cfg()).unwrap();
        assert!((f - SQRT_2 * 0.8).abs() < 1e-10);
        let axis = NormalVector::new(vec![1.0, 0.0]).unwrap();
        assert!((cut_distance_for_normal(&axis, 0.1, &cfg()).unwrap() - 0.8).abs() < 1e-12);
        assert_eq!(cut_distance_for_normal(&axis, 0.6, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_consistency() {
        let tol = ToleranceConfig::default();
        for n in 1..=12 {
            let normal = NormalVector::diagonal(n).unwrap();
            for &eps in &[0.05, 0.1, 0.25] {
                let general = cut_distance_for_normal(&normal, eps, &cfg()).unwrap();
                let diag = diag_cut_distance(n, eps, &tol).unwrap();
                assert!((general - diag).abs() <= 1e-9, "n={n} eps={eps}: {general} vs {diag}");
            }
        }
    }

    #[test]
    fn threshold_round_trip_with_zero_components() {
        let normal = NormalVector::from_direction(&[0.0, 2.0, 1.0, 0.0]).unwrap();
        for &eps in &[0.03, 0.3, 0.5, 0.8] {
            let t = cut_threshold_for_normal(&normal, eps, &cfg()).unwrap();
            let cut = CubeCutSpec::new(normal.clone(), t).unwrap();
            let v = halfspace_cube_volume(&cut, &cfg()).unwrap().value;
            assert!((v - eps).abs() < 1e-10, "eps={eps}: {v}");
        }
    }
}
