use std::f64::consts::PI;

use crate::error::{Error, Result};

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("argument must be positive and finite, got {x}")));
    }
    Ok(())
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok(libm::lgamma_r(x).0)
}

/// Leading-order Stirling form of `ln Γ(z + 1)`:
/// `-z + (z + 1/2) ln z + ln(2π)/2`, with no correction terms.
pub fn stirling_log_gamma(z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(-z + (z + 0.5) * z.ln() + 0.5 * (2.0 * PI).ln())
}
