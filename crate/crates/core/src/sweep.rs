//! Convergence tables: finite-`n` quantities against their `n -> ∞` limits.

use std::f64::consts::{E, PI};

use crate::ball::{
    ball_distance_finite, ball_distance_limit_closed_form, radius_ratio_power, slab_gaussian_rate, slab_volume_exact,
    slab_volume_limit,
};
use crate::config::ToleranceConfig;
use crate::cube::{diag_cut_distance, diag_distance_limit, LimitVariant};
use crate::error::Result;
use crate::types::ConvergenceRow;

/// Slab volume at fixed half-width `d` against `√e ∫₀^d exp(-πe x²) dx`.
pub fn ball_slab_convergence(d: f64, dims: &[usize], cfg: &ToleranceConfig) -> Result<Vec<ConvergenceRow>> {
    let limit = slab_volume_limit(d)?;
    dims.iter()
        .map(|&n| Ok(ConvergenceRow::new(n, slab_volume_exact(n, d, cfg)?.value, limit)))
        .collect()
}

/// Finite-`n` ball distance against `D(ε)`.
pub fn ball_distance_convergence(epsilon: f64, dims: &[usize], cfg: &ToleranceConfig) -> Result<Vec<ConvergenceRow>> {
    let limit = ball_distance_limit_closed_form(epsilon)?;
    dims.iter()
        .map(|&n| Ok(ConvergenceRow::new(n, ball_distance_finite(epsilon, n, cfg)?, limit)))
        .collect()
}

/// `(R_n/R_{n-1})^{n-1}` against `√e`.
pub fn radius_ratio_convergence(dims: &[usize]) -> Result<Vec<ConvergenceRow>> {
    dims.iter().map(|&n| Ok(ConvergenceRow::new(n, radius_ratio_power(n)?, E.sqrt()))).collect()
}

/// `(n-1)/(2R_n²)` against `πe`.
pub fn gaussian_rate_convergence(dims: &[usize]) -> Result<Vec<ConvergenceRow>> {
    dims.iter().map(|&n| Ok(ConvergenceRow::new(n, slab_gaussian_rate(n)?, PI * E))).collect()
}

/// Diagonal cube distance against the chosen limit constant.
pub fn cube_distance_convergence(
    epsilon: f64,
    dims: &[usize],
    variant: LimitVariant,
    cfg: &ToleranceConfig,
) -> Result<Vec<ConvergenceRow>> {
    let limit = diag_distance_limit(epsilon, variant)?;
    dims.iter()
        .map(|&n| Ok(ConvergenceRow::new(n, diag_cut_distance(n, epsilon, cfg)?, limit)))
        .collect()
}
