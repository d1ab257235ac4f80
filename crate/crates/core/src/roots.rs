//! Root finding for monotone nondecreasing functions.

use crate::error::{Error, Result};

/// Settings for [`solve_increasing`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Stop once `|f(x) - target| <= value_tol`.
    pub value_tol: f64,
    /// Bisect until the bracket is narrower than this, then switch to Newton.
    pub bisect_width: f64,
    pub max_iter: usize,
}

impl RootOptions {
    pub fn new(value_tol: f64, bisect_width: f64) -> Self {
        Self { value_tol, bisect_width, max_iter: 400 }
    }
}

/// Solves `f(x) = target` on `[lo, hi]` for nondecreasing `f`.
///
/// `eval` returns `(f(x), f'(x))`. The bracket is bisected down to
/// `bisect_width`, then safeguarded Newton steps finish the job: any Newton
/// step that leaves the current bracket is replaced by a bisection.
pub fn solve_increasing<F>(mut eval: F, lo: f64, hi: f64, target: f64, opts: RootOptions) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let (f_lo, _) = eval(lo)?;
    if f_lo - target >= -opts.value_tol {
        return Ok(lo);
    }
    let (f_hi, _) = eval(hi)?;
    if f_hi - target <= opts.value_tol {
        return Ok(hi);
    }

    let (mut a, mut b) = (lo, hi);
    let mut x = 0.5 * (a + b);
    for _ in 0..opts.max_iter {
        let (fx, dfx) = eval(x)?;
        let r = fx - target;
        if r.abs() <= opts.value_tol {
            return Ok(x);
        }
        if r < 0.0 {
            a = x;
        } else {
            b = x;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Bracket collapsed to adjacent floats.
            return Ok(x);
        }
        x = if b - a > opts.bisect_width || dfx.is_nan() || dfx <= 0.0 {
            mid
        } else {
            let newton = x - r / dfx;
            if newton > a && newton < b {
                newton
            } else {
                mid
            }
        };
    }
    Err(Error::NoConvergence { what: "monotone root finder", iterations: opts.max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root() {
        let x = solve_increasing(|x| Ok((x * x * x, 3.0 * x * x)), 0.0, 2.0, 2.0, RootOptions::new(1e-14, 1e-6)).unwrap();
        assert!((x - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn target_at_endpoints() {
        let opts = RootOptions::new(1e-12, 1e-6);
        assert_eq!(solve_increasing(|x| Ok((x, 1.0)), 0.0, 1.0, 0.0, opts).unwrap(), 0.0);
        assert_eq!(solve_increasing(|x| Ok((x, 1.0)), 0.0, 1.0, 5.0, opts).unwrap(), 1.0);
    }

    #[test]
    fn flat_derivative_falls_back_to_bisection() {
        // Derivative reported as zero everywhere.
        let x = solve_increasing(|x: f64| Ok((x.powi(5), 0.0)), -1.0, 1.0, 0.5, RootOptions::new(1e-13, 1e-6)).unwrap();
        assert!((x.powi(5) - 0.5).abs() <= 1e-13);
    }

    #[test]
    fn errors_propagate() {
        let err = solve_increasing(|_| Err(Error::domain("boom")), 0.0, 1.0, 0.5, RootOptions::new(1e-12, 1e-6));
        assert!(err.is_err());
    }
}
