use crate::error::{Error, Result};

use super::gamma::log_gamma;

const MAX_ITER: usize = 10_000;

pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!("reg_inc_beta requires a, b > 0, got a={a}, b={b}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("reg_inc_beta requires x in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let value = if x > (a + 1.0) / (a + b + 2.0) {
        1.0 - continued_fraction(b, a, 1.0 - x)?
    } else {
        continued_fraction(a, b, x)?
    };
    Ok(value.clamp(0.0, 1.0))
}

// x^a (1-x)^b / (a B(a,b)) times the continued fraction, by modified Lentz.
fn continued_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let ln_prefix = a * x.ln() + b * (-x).ln_1p() - ln_beta(a, b)?;
    let prefix = ln_prefix.exp() / a;

    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= f64::EPSILON {
            return Ok(prefix * h);
        }
    }
    Err(Error::NoConvergence { what: "incomplete beta continued fraction", iterations: MAX_ITER })
}
