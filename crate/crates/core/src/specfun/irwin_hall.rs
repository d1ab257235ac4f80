//! Irwin–Hall distribution: the law of a sum of `n` independent uniform
//! `[0, 1]` variables.
//!
//! The closed-form CDF
//!
//! ```text
//! F_n(a) = (1/n!) Σ_{k=0}^{⌊a⌋} (-1)^k C(n, k) (a - k)^n
//! ```
//!
//! has terms of size roughly `e^n` that cancel down to a probability, so
//! double precision is useless past `n ≈ 30`. Up to
//! `exact_irwin_hall_max_n` the sum is evaluated exactly on the dyadic
//! rational `a` and rounded once; above it the Gaussian approximation is
//! returned together with its Berry–Esseen error bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::config::ToleranceConfig;
use crate::error::{check_dimension, check_finite, Error, Result};
use crate::exact::{factorial, frac_bits, ratio_to_f64, scaled};
use crate::roots::{solve_increasing, RootOptions};
use crate::types::{Method, VolumeEstimate};

use super::normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile};

/// Variance of a uniform `[0, 1]` variable.
pub const UNIFORM_VARIANCE: f64 = 1.0 / 12.0;
/// `E|ξ - 1/2|^3` for `ξ` uniform on `[0, 1]`.
pub const UNIFORM_ABS_THIRD_MOMENT: f64 = 1.0 / 32.0;

/// Exact `num / den` for `Σ_k (-1)^k C(n,k) (a-k)_+^power / power!` with
/// `0 <= a <= n`.
fn alternating_sum(n: usize, a: f64, power: usize) -> (BigInt, BigInt) {
    let s = frac_bits(a);
    let big_a = scaled(a, s);
    let unit = BigInt::one() << s as usize;
    let mut binom = BigInt::one();
    let mut num = BigInt::zero();
    let mut shift = BigInt::zero();
    let mut k = 0usize;
    while k <= n && (k as f64) < a {
        let base = &big_a - &shift;
        let term = &binom * num_traits::pow(base, power);
        if k.is_multiple_of(2) {
            num += term;
        } else {
            num -= term;
        }
        binom = binom * (n - k) / (k + 1);
        shift += &unit;
        k += 1;
    }
    let den = factorial(power) << (s as usize * power);
    (num, den)
}

fn exact_cdf(n: usize, a: f64) -> f64 {
    if a <= 0.0 {
        return 0.0;
    }
    if a >= n as f64 {
        return 1.0;
    }
    let half = 0.5 * n as f64;
    if a > half {
        // n - a is exact (Sterbenz); use F(a) = 1 - F(n - a).
        let (num, den) = alternating_sum(n, n as f64 - a, n);
        return ratio_to_f64(&(&den - &num), &den).clamp(0.0, 1.0);
    }
    let (num, den) = alternating_sum(n, a, n);
    ratio_to_f64(&num, &den).clamp(0.0, 1.0)
}

fn exact_pdf(n: usize, a: f64) -> f64 {
    if a <= 0.0 || a >= n as f64 {
        return 0.0;
    }
    if n == 1 {
        return 1.0;
    }
    let a = if a > 0.5 * n as f64 { n as f64 - a } else { a };
    let (num, den) = alternating_sum(n, a, n - 1);
    ratio_to_f64(&num, &den).max(0.0)
}

fn sum_sd(n: usize) -> f64 {
    (n as f64 * UNIFORM_VARIANCE).sqrt()
}

/// Gaussian approximation `Φ((a - n/2) / √(n/12))`.
pub fn irwin_hall_gaussian_cdf(n: usize, a: f64) -> f64 {
    std_normal_cdf((a - 0.5 * n as f64) / sum_sd(n))
}

/// Berry–Esseen bound `C ρ / (σ³ √n)` for sums of uniform `[0, 1]` variables,
/// with the constant `C` supplied by the caller.
pub fn berry_esseen_bound_with(n: usize, constant: f64) -> Result<f64> {
    check_dimension(n, 1)?;
    Ok(constant * UNIFORM_ABS_THIRD_MOMENT / (UNIFORM_VARIANCE.powf(1.5) * (n as f64).sqrt()))
}

/// Berry–Esseen bound with the default constant 0.4748.
pub fn berry_esseen_bound(n: usize) -> Result<f64> {
    berry_esseen_bound_with(n, ToleranceConfig::default().berry_esseen_constant)
}

/// Irwin–Hall CDF with its evaluation method and error bound.
pub fn irwin_hall_cdf_with(n: usize, a: f64, cfg: &ToleranceConfig) -> Result<VolumeEstimate> {
    check_dimension(n, 1)?;
    check_finite("a", a)?;
    if n <= cfg.exact_irwin_hall_max_n {
        Ok(VolumeEstimate::new(exact_cdf(n, a), Method::Exact, 0.5 * f64::EPSILON))
    } else {
        let value = if a <= 0.0 {
            0.0
        } else if a >= n as f64 {
            1.0
        } else {
            irwin_hall_gaussian_cdf(n, a)
        };
        let bound = berry_esseen_bound_with(n, cfg.berry_esseen_constant)?;
        Ok(VolumeEstimate::new(value, Method::Gaussian, bound))
    }
}

/// `P(ξ₁ + … + ξₙ <= a)` for independent uniform `[0, 1]` variables.
pub fn irwin_hall_cdf(n: usize, a: f64) -> Result<f64> {
    Ok(irwin_hall_cdf_with(n, a, &ToleranceConfig::default())?.value)
}

/// Irwin–Hall density; exact up to the configured cap, Gaussian above.
pub fn irwin_hall_pdf(n: usize, a: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_dimension(n, 1)?;
    check_finite("a", a)?;
    if n <= cfg.exact_irwin_hall_max_n {
        Ok(exact_pdf(n, a))
    } else {
        let sd = sum_sd(n);
        Ok(std_normal_pdf((a - 0.5 * n as f64) / sd) / sd)
    }
}

/// Smallest `a` with `irwin_hall_cdf(n, a) = p` to within `root_abs_tol`.
pub fn irwin_hall_quantile_with(n: usize, p: f64, cfg: &ToleranceConfig) -> Result<f64> {
    check_dimension(n, 1)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("quantile requires 0 < p < 1, got {p}")));
    }
    let nf = n as f64;
    if p == 0.5 {
        return Ok(0.5 * nf);
    }
    if n == 1 {
        return Ok(p);
    }
    if n > cfg.exact_irwin_hall_max_n {
        let a = 0.5 * nf + sum_sd(n) * std_normal_quantile(p)?;
        return Ok(a.clamp(0.0, nf));
    }
    solve_increasing(
        |a| Ok((exact_cdf(n, a), exact_pdf(n, a))),
        0.0,
        nf,
        p,
        RootOptions::new(cfg.root_abs_tol, 1e-6),
    )
}

pub fn irwin_hall_quantile(n: usize, p: f64) -> Result<f64> {
    irwin_hall_quantile_with(n, p, &ToleranceConfig::default())
}

/// Largest `|F_n(a) - Φ((a - n/2)/√(n/12))|` over `points` equally spaced
/// values of `a` in `[0, n]`, with the exact CDF on the left.
pub fn irwin_hall_sup_gap(n: usize, points: usize) -> Result<f64> {
    check_dimension(n, 1)?;
    if points < 2 {
        return Err(Error::domain("need at least two grid points"));
    }
    let nf = n as f64;
    let gap = (0..points)
        .map(|i| {
            let a = nf * i as f64 / (points - 1) as f64;
            (exact_cdf(n, a) - irwin_hall_gaussian_cdf(n, a)).abs()
        })
        .fold(0.0, f64::max);
    Ok(gap)
}
