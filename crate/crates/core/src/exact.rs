//! Exact arithmetic on binary floating-point inputs.
//!
//! Every finite `f64` is a dyadic rational `m / 2^s`, so sums of powers of
//! differences of such numbers are exact big integers over a power of two.
//! The alternating sums behind the Irwin–Hall CDF and the cube-cut volume
//! cancel catastrophically in floating point; here they are evaluated
//! exactly and rounded once at the end.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

/// Number of binary digits after the point needed to represent `x` exactly.
pub(crate) fn frac_bits(x: f64) -> u32 {
    debug_assert!(x.is_finite());
    if x == 0.0 {
        return 0;
    }
    let bits = x.abs().to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let mut mantissa = bits & ((1u64 << 52) - 1);
    let mut exp = if exp_field == 0 {
        -1074
    } else {
        mantissa |= 1u64 << 52;
        exp_field - 1075
    };
    let tz = mantissa.trailing_zeros() as i32;
    exp += tz;
    if exp >= 0 {
        0
    } else {
        (-exp) as u32
    }
}

/// `x * 2^scale` as an integer. `scale` must be at least `frac_bits(x)`.
pub(crate) fn scaled(x: f64, scale: u32) -> BigInt {
    debug_assert!(scale >= frac_bits(x));
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.abs().to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let mut mantissa = bits & ((1u64 << 52) - 1);
    let exp = if exp_field == 0 {
        -1074
    } else {
        mantissa |= 1u64 << 52;
        exp_field - 1075
    };
    let shift = exp + scale as i64;
    let mag = BigUint::from(mantissa);
    let mag = if shift >= 0 { mag << (shift as usize) } else { mag >> ((-shift) as usize) };
    let sign = if x < 0.0 { Sign::Minus } else { Sign::Plus };
    BigInt::from_biguint(sign, mag)
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (2..=n as u64).fold(BigInt::one(), |acc, k| acc * k)
}

/// `num / den` rounded to `f64`. `den` must be positive.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    debug_assert!(den.sign() == Sign::Plus);
    if num.is_zero() {
        return 0.0;
    }
    // Keep ~70 significant bits in the quotient, then scale back.
    let shift = 70i64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << (shift as usize)) / den
    } else {
        num / (den << ((-shift) as usize))
    };
    let q = q.to_f64().unwrap_or(f64::NAN);
    libm::ldexp(q, (-shift) as i32)
}
