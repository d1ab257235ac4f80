use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by the quadrature, root-finding and
/// Irwin–Hall code paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Absolute tolerance for adaptive quadrature.
    pub quad_abs_tol: f64,
    /// Absolute tolerance on the volume when inverting a volume function.
    pub root_abs_tol: f64,
    /// Largest `n` for which the Irwin–Hall CDF is evaluated exactly.
    pub exact_irwin_hall_max_n: usize,
    /// Universal constant in the Berry–Esseen inequality.
    pub berry_esseen_constant: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-12,
            root_abs_tol: 1e-12,
            exact_irwin_hall_max_n: 512,
            berry_esseen_constant: 0.4748,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("quad_abs_tol", self.quad_abs_tol),
            ("root_abs_tol", self.root_abs_tol),
            ("berry_esseen_constant", self.berry_esseen_constant),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if self.exact_irwin_hall_max_n < 1 {
            return Err(Error::domain("exact_irwin_hall_max_n must be >= 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let cfg = ToleranceConfig { quad_abs_tol: 0.0, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = ToleranceConfig { exact_irwin_hall_max_n: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
