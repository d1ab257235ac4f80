use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::domain(format!("probability must lie in [0, 1], got {value}")))
        }
    }

    /// Clamps into `[0, 1]`; NaN maps to 0.
    pub fn clamped(value: f64) -> Self {
        if value.is_nan() {
            Self(0.0)
        } else {
            Self(value.clamp(0.0, 1.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact rational arithmetic, rounded once to `f64`.
    Exact,
    /// Central-limit approximation with a Berry–Esseen error bound.
    Gaussian,
    /// Adaptive quadrature.
    Quadrature,
    /// Regularized incomplete beta function.
    IncompleteBeta,
    /// Closed-form expression.
    ClosedForm,
    /// Monte Carlo estimate.
    MonteCarlo,
    /// Finite-dimensional value.
    FiniteN,
    /// `n -> infinity` limit.
    Limit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Gaussian => "gaussian",
            Method::Quadrature => "quadrature",
            Method::IncompleteBeta => "incomplete_beta",
            Method::ClosedForm => "closed_form",
            Method::MonteCarlo => "monte_carlo",
            Method::FiniteN => "finite_n",
            Method::Limit => "limit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A volume together with how it was computed and how far it may be off.
///
/// For [`Method::MonteCarlo`] the error is three standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub method: Method,
    pub abs_error: f64,
}

impl VolumeEstimate {
    pub fn new(value: f64, method: Method, abs_error: f64) -> Self {
        Self { value, method, abs_error }
    }
}

/// One line of a convergence table: a finite-`n` quantity next to its limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub finite: f64,
    pub limit: f64,
    pub gap: f64,
}

impl ConvergenceRow {
    pub fn new(n: usize, finite: f64, limit: f64) -> Self {
        Self { n, finite, limit, gap: (finite - limit).abs() }
    }
}
