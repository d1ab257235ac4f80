//! Central slabs of the unit-volume n-ball.
//!
//! The ball of radius `R_n = Γ(n/2 + 1)^{1/n} / √π` has volume one. The slab
//! between the central hyperplane and a parallel one at distance `d` has
//! volume
//!
//! ```text
//! V_n(d) = (R_n / R_{n-1})^{n-1} ∫₀^d (1 - x²/R_n²)^{(n-1)/2} dx
//! ```
//!
//! which tends to `√e ∫₀^d exp(-πe x²) dx = erf(d √(πe)) / 2` as `n` grows.
//! Two convex sets of volume `ε` can therefore sit no further apart than the
//! width `2d` of the symmetric slab holding `1 - 2ε` of the volume.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{check_dimension, Error, Result};
use crate::quad::{integrate, MAX_SUBDIVISIONS};
use crate::roots::{solve_increasing, RootOptions};
use crate::specfun::{erf, erf_inverse, log_gamma, reg_inc_beta};
use crate::types::{Method, Probability, VolumeEstimate};

/// Quadrature and incomplete-beta slab volumes must agree this closely.
pub const SLAB_CROSS_CHECK_TOL: f64 = 1e-10;

/// Width of the bisection phase when inverting a slab volume.
const BISECT_WIDTH: f64 = 1e-6;

/// The slab `0 <= x₁ <= d` of the unit-volume ball in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSlabSpec {
    pub n: usize,
    pub d: f64,
}

impl BallSlabSpec {
    /// Validates `n >= 1` and `d >= 0`; `d` beyond the radius is clamped.
    pub fn new(n: usize, d: f64) -> Result<Self> {
        check_dimension(n, 1)?;
        check_half_width(d)?;
        Ok(Self { n, d: d.min(unit_ball_radius(n)?) })
    }
}

/// Distance bound for two volume-`ε` sets in the ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub distance: f64,
    /// [`Method::FiniteN`] or [`Method::Limit`].
    pub method: Method,
    pub n: Option<usize>,
    pub epsilon: Probability,
}

fn check_half_width(d: f64) -> Result<()> {
    if d.is_nan() || d < 0.0 || d.is_infinite() {
        return Err(Error::domain(format!("half-width must be finite and >= 0, got {d}")));
    }
    Ok(())
}

/// Radius of the unit-volume ball, `Γ(n/2 + 1)^{1/n} / √π`.
pub fn unit_ball_radius(n: usize) -> Result<f64> {
    check_dimension(n, 1)?;
    let nf = n as f64;
    Ok((log_gamma(0.5 * nf + 1.0)? / nf - 0.5 * PI.ln()).exp())
}

/// `ln (R_n / R_{n-1})^{n-1}`, which also equals `ln(C_{n-1} R_n^{n-1})`.
fn ln_section_factor(n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok((nf - 1.0) / nf * log_gamma(0.5 * nf + 1.0)? - log_gamma(0.5 * (nf + 1.0))?)
}

/// `(R_n / R_{n-1})^{n-1}`; tends to `√e`.
pub fn radius_ratio_power(n: usize) -> Result<f64> {
    check_dimension(n, 2)?;
    Ok(ln_section_factor(n)?.exp())
}

/// `(n - 1) / (2 R_n²)`; tends to `πe`.
pub fn slab_gaussian_rate(n: usize) -> Result<f64> {
    check_dimension(n, 2)?;
    let r = unit_ball_radius(n)?;
    Ok((n as f64 - 1.0) / (2.0 * r * r))
}

/// Normalized cross-section `(1 - x²/R²)^{(n-1)/2}`, evaluated in log space.
fn section_profile(n: usize, radius: f64, x: f64) -> f64 {
    let u = x / radius;
    if u >= 1.0 {
        return if n == 1 { 1.0 } else { 0.0 };
    }
    (0.5 * (n as f64 - 1.0) * (-u * u).ln_1p()).exp()
}

/// Density of the slab volume in `d`: the `(n-1)`-volume of the section at `x`.
pub fn section_volume(n: usize, x: f64) -> Result<f64> {
    check_dimension(n, 1)?;
    let r = unit_ball_radius(n)?;
    if x.abs() > r {
        return Ok(0.0);
    }
    Ok(ln_section_factor(n)?.exp() * section_profile(n, r, x.abs()))
}

/// Slab volume by adaptive quadrature of the cross-section.
pub fn slab_volume_quadrature(n: usize, d: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_dimension(n, 1)?;
    check_half_width(d)?;
    let r = unit_ball_radius(n)?;
    let d = d.min(r);
    if n == 1 {
        return Ok(d.min(0.5));
    }
    let factor = ln_section_factor(n)?.exp();
    let q = integrate(|x| section_profile(n, r, x), 0.0, d, cfg.quad_abs_tol / factor, MAX_SUBDIVISIONS)?;
    Ok((factor * q.value).clamp(0.0, 0.5))
}

/// Slab volume as `I_{(d/R)²}(1/2, (n+1)/2) / 2`.
pub fn slab_volume_beta(n: usize, d: f64) -> Result<f64> {
    check_dimension(n, 1)?;
    check_half_width(d)?;
    let r = unit_ball_radius(n)?;
    let u = (d / r).min(1.0);
    Ok((0.5 * reg_inc_beta(0.5, 0.5 * (n as f64 + 1.0), u * u)?).min(0.5))
}

/// Volume of `{0 <= x₁ <= d}` in the unit-volume `n`-ball.
///
/// Computed by quadrature and through the incomplete beta function; fails
/// with [`Error::CrossCheck`] if they differ by more than
/// [`SLAB_CROSS_CHECK_TOL`]. The returned error is their difference.
pub fn slab_volume_exact(n: usize, d: f64, cfg: &ToleranceConfig) -> Result<VolumeEstimate> {
    let by_beta = slab_volume_beta(n, d)?;
    let by_quad = slab_volume_quadrature(n, d, cfg)?;
    let gap = (by_beta - by_quad).abs();
    if gap > SLAB_CROSS_CHECK_TOL {
        return Err(Error::CrossCheck(format!(
            "slab volume n={n} d={d}: incomplete beta {by_beta} vs quadrature {by_quad}"
        )));
    }
    Ok(VolumeEstimate::new(by_beta, Method::IncompleteBeta, gap))
}

fn sqrt_pi_e() -> f64 {
    (PI * E).sqrt()
}

/// Limit slab volume `erf(d √(πe)) / 2`.
pub fn slab_volume_limit(d: f64) -> Result<f64> {
    check_half_width(d)?;
    Ok((0.5 * erf(d * sqrt_pi_e())).min(0.5))
}

/// Limit slab volume `√e ∫₀^d exp(-πe x²) dx` by quadrature.
pub fn slab_volume_limit_quadrature(d: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_half_width(d)?;
    let rate = PI * E;
    let q = integrate(|x| (-rate * x * x).exp(), 0.0, d, cfg.quad_abs_tol / E.sqrt(), MAX_SUBDIVISIONS)?;
    Ok((E.sqrt() * q.value).min(0.5))
}

fn check_epsilon(epsilon: f64) -> Result<Probability> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    Probability::new(epsilon)
}

/// Limit distance `2 erf⁻¹(1 - 2ε) / √(πe)`.
pub fn ball_distance_limit_closed_form(epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    Ok(2.0 * erf_inverse(1.0 - 2.0 * epsilon)? / sqrt_pi_e())
}

/// Limit distance by root-solving the quadrature form of the limit slab volume.
pub fn ball_distance_limit_by_root(epsilon: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_epsilon(epsilon)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    let rate = PI * E;
    let d = solve_increasing(
        |d| Ok((slab_volume_limit_quadrature(d, cfg)?, E.sqrt() * (-rate * d * d).exp())),
        0.0,
        10.0,
        0.5 - epsilon,
        RootOptions::new(cfg.root_abs_tol, BISECT_WIDTH),
    )?;
    Ok(2.0 * d)
}

/// Distance `2d` where the finite-`n` slab (quadrature route) holds `1/2 - ε`.
pub fn ball_distance_finite(epsilon: f64, n: usize, cfg: &ToleranceConfig) -> Result<f64> {
    check_epsilon(epsilon)?;
    check_dimension(n, 2)?;
    if epsilon >= 0.5 {
        return Ok(0.0);
    }
    let r = unit_ball_radius(n)?;
    let factor = ln_section_factor(n)?.exp();
    let d = solve_increasing(
        |d| Ok((slab_volume_quadrature(n, d, cfg)?, factor * section_profile(n, r, d))),
        0.0,
        r,
        0.5 - epsilon,
        RootOptions::new(cfg.root_abs_tol, BISECT_WIDTH),
    )?;
    Ok(2.0 * d)
}

/// Largest distance between two volume-`ε` convex subsets of the unit-volume
/// ball: in dimension `n` if given, otherwise in the `n -> ∞` limit.
pub fn ball_distance_with(epsilon: f64, n: Option<usize>, cfg: &ToleranceConfig) -> Result<DistanceResult> {
    let eps = check_epsilon(epsilon)?;
    let (distance, method) = match n {
        Some(n) => (ball_distance_finite(epsilon, n, cfg)?, Method::FiniteN),
        None => (ball_distance_limit_closed_form(epsilon)?, Method::Limit),
    };
    Ok(DistanceResult { distance, method, n, epsilon: eps })
}

pub fn ball_distance(epsilon: f64, n: Option<usize>) -> Result<DistanceResult> {
    ball_distance_with(epsilon, n, &ToleranceConfig::default())
}
