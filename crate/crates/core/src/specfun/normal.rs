use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `Φ(x)`, clamped to `[0, 1]`.
pub fn std_normal_cdf(x: f64) -> f64 {
    (0.5 * erfc(-x * FRAC_1_SQRT_2)).clamp(0.0, 1.0)
}

// Acklam's rational approximation, relative error ~1e-9 before refinement.
#[allow(clippy::excessive_precision)]
fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00, 3.754408661907416e+00];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// `Φ⁻¹(p)` for `0 < p < 1`.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("quantile requires 0 < p < 1, got {p}")));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // 1 - p is exact here.
        return Ok(-std_normal_quantile(1.0 - p)?);
    }
    let mut x = acklam(p);
    // Halley refinement against the lower tail, which is accurate for p <= 1/2.
    for _ in 0..2 {
        let e = 0.5 * erfc(-x * FRAC_1_SQRT_2) - p;
        let u = e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
        x -= u / (1.0 + 0.5 * x * u);
    }
    Ok(x)
}

/// Inverse error function on `(-1, 1)`.
pub fn erf_inverse(y: f64) -> Result<f64> {
    if !(y > -1.0 && y < 1.0) {
        return Err(Error::domain(format!("erf_inverse requires |y| < 1, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let ay = y.abs();
    // erf(x) = y  <=>  x = -Φ⁻¹((1 - y)/2)/√2.
    let mut x = -std_normal_quantile(0.5 * (1.0 - ay))? / SQRT_2;
    for _ in 0..3 {
        let residual = if ay < 0.5 { erf(x) - ay } else { (1.0 - ay) - erfc(x) };
        let deriv = FRAC_2_SQRT_PI * (-x * x).exp();
        if deriv == 0.0 {
            break;
        }
        x -= residual / deriv;
    }
    Ok(x.copysign(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, MAX_SUBDIVISIONS};

    // Φ(x) by quadrature of the density, independent of erf.
    fn cdf_by_quadrature(x: f64) -> f64 {
        let tail = integrate(std_normal_pdf, x.min(0.0), 0.0, 1e-15, MAX_SUBDIVISIONS).unwrap().value;
        if x <= 0.0 {
            0.5 - tail
        } else {
            0.5 + integrate(std_normal_pdf, 0.0, x, 1e-15, MAX_SUBDIVISIONS).unwrap().value
        }
    }

    #[test]
    fn cdf_matches_quadrature() {
        for &x in &[-6.0, -3.2, -1.0, -0.1, 0.0, 0.7, 2.5, 5.0] {
            assert!((std_normal_cdf(x) - cdf_by_quadrature(x)).abs() <= 1e-14, "x={x}");
        }
        assert_eq!(std_normal_cdf(0.0), 0.5);
    }

    #[test]
    fn quantile_known_values() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        // mpmath: -sqrt(2) * erfinv(0.8)
        let q = std_normal_quantile(0.1).unwrap();
        assert!((q + 1.281_551_565_544_600_5).abs() < 1e-14);
        assert!((std_normal_quantile(0.9).unwrap() - 1.281_551_565_544_600_5).abs() < 1e-14);
        // Root of the quadrature-based CDF.
        assert!((cdf_by_quadrature(q) - 0.1).abs() < 1e-14);
    }

    #[test]
    fn quantile_inverts_cdf() {
        let mut p = 1e-300;
        while p < 0.5 {
            let x = std_normal_quantile(p).unwrap();
            assert!((std_normal_cdf(x) / p - 1.0).abs() < 1e-12, "p={p}");
            p *= 3.7;
        }
        for i in 1..1000 {
            let p = i as f64 / 1000.0;
            let x = std_normal_quantile(p).unwrap();
            assert!((std_normal_cdf(x) - p).abs() <= 1e-12, "p={p}");
        }
    }

    #[test]
    fn quantile_domain() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(std_normal_quantile(p).is_err());
        }
    }

    #[test]
    fn erf_basics() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(10.0) - 1.0).abs() <= 1e-15);
        // Against quadrature of 2/sqrt(pi) exp(-t^2).
        for &x in &[0.1, 0.5, 1.3, 3.0] {
            let q = integrate(|t| FRAC_2_SQRT_PI * (-t * t).exp(), 0.0, x, 1e-16, MAX_SUBDIVISIONS)
                .unwrap()
                .value;
            assert!((erf(x) - q).abs() <= 1e-14, "x={x}");
        }
    }

    #[test]
    fn erf_inverse_values() {
        // mpmath erfinv(0.5)
        assert!((erf_inverse(0.5).unwrap() - 0.476_936_276_204_469_9).abs() < 1e-15);
        assert!((erf_inverse(-0.5).unwrap() + 0.476_936_276_204_469_9).abs() < 1e-15);
        assert_eq!(erf_inverse(0.0).unwrap(), 0.0);
        for y in [1.0, -1.0, 1.5] {
            assert!(erf_inverse(y).is_err());
        }
    }

    #[test]
    fn erf_inverse_round_trip() {
        let mut x = -5.0;
        while x <= 5.0 {
            let y = erf(x);
            if y.abs() < 1.0 {
                let back = erf_inverse(y).unwrap();
                // Near |x| = 5, erf is flat to within a few ulps of 1.
                let slope = FRAC_2_SQRT_PI * (-x * x).exp();
                let tol = 1e-12f64.max(4.0 * f64::EPSILON / slope);
                assert!((back - x).abs() <= tol, "x={x} back={back}");
            }
            x += 0.01;
        }
        // Strict 1e-12 holds while the conditioning of erf allows it.
        for i in 1..=150 {
            let x = i as f64 * 0.02;
            assert!((erf_inverse(erf(x)).unwrap() - x).abs() <= 1e-12, "x={x}");
        }
    }
}
