//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Default cap on the number of subintervals.
pub const MAX_SUBDIVISIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let sum = f(center - dx) + f(center + dx);
        kronrod += w * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate falls below `abs_tol` (or below a round-off floor relative to the
/// result). Fails if `max_intervals` is exhausted first.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if abs_tol.is_nan() || abs_tol <= 0.0 {
        return Err(Error::domain("abs_tol must be positive"));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0, intervals: 0 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let (value, error) = gk15(&f, lo, hi);
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a: lo, b: hi, value, error });

    loop {
        let floor = 50.0 * f64::EPSILON * total.abs();
        if total_err <= abs_tol.max(floor) {
            break;
        }
        if heap.len() >= max_intervals {
            return Err(Error::NoConvergence { what: "adaptive quadrature", iterations: heap.len() });
        }
        let seg = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval cannot be split further in f64.
            heap.push(Segment { error: 0.0, ..seg });
            total_err = heap.iter().map(|s| s.error).sum();
            if total_err == 0.0 {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(&f, seg.a, mid);
        let (v2, e2) = gk15(&f, mid, seg.b);
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.error;
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });
        if total_err < 0.0 || heap.len() % 64 == 0 {
            // Resum to shed accumulated cancellation in the running totals.
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }

    let value: f64 = heap.iter().map(|s| s.value).sum();
    let abs_error: f64 = heap.iter().map(|s| s.error).sum();
    Ok(QuadResult { value: sign * value, abs_error, intervals: heap.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-14, MAX_SUBDIVISIONS).unwrap();
        assert!((r.value - 8.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        let r = integrate(|x| (-x * x).exp(), 0.0, 10.0, 1e-13, MAX_SUBDIVISIONS).unwrap();
        assert!((r.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let r = integrate(|x| x.cos(), 1.0, 0.0, 1e-13, MAX_SUBDIVISIONS).unwrap();
        assert!((r.value + 1f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, MAX_SUBDIVISIONS).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_interval() {
        let r = integrate(|_| 1.0, 2.0, 2.0, 1e-12, 10).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn subdivision_cap_is_reported() {
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, 1e-15, 8).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
    }
}
