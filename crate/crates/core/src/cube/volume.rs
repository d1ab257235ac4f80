//! Exact volume of `{x ∈ [0,1]^n : w·x <= t}` for strictly positive `w`.
//!
//! ```text
//! vol = 1/(n! Π wᵢ) Σ_{K ⊆ [n]} (-1)^{|K|} (t - Σ_{i∈K} wᵢ)_+^n
//! ```
//!
//! All inputs are dyadic rationals, so the sum is taken in exact integer
//! arithmetic. Only subsets with `Σ_K w < t` contribute, which the
//! enumeration prunes on; thresholds above the centre `Σw/2` go through the
//! complement `vol(t) = 1 - vol(Σw - t)`, computed exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{factorial, frac_bits, ratio_to_f64, scaled};

#[derive(Debug, Clone)]
pub(crate) struct ExactCut {
    n: usize,
    weight_scale: u32,
    // Weights times 2^weight_scale, sorted ascending for pruning.
    weights: Vec<BigInt>,
    weight_product: BigInt,
    weight_total: BigInt,
    total: f64,
}

impl ExactCut {
    /// `weights` must be non-empty, finite and strictly positive.
    pub(crate) fn new(weights: &[f64]) -> Self {
        debug_assert!(!weights.is_empty() && weights.iter().all(|&w| w > 0.0 && w.is_finite()));
        let weight_scale = weights.iter().map(|&w| frac_bits(w)).max().unwrap_or(0);
        let mut big: Vec<BigInt> = weights.iter().map(|&w| scaled(w, weight_scale)).collect();
        big.sort();
        let weight_product = big.iter().fold(BigInt::one(), |acc, w| acc * w);
        let weight_total = big.iter().fold(BigInt::zero(), |acc, w| acc + w);
        Self { n: weights.len(), weight_scale, weights: big, weight_product, weight_total, total: weights.iter().sum() }
    }

    pub(crate) fn total(&self) -> f64 {
        self.total
    }

    /// Threshold scaled to a common integer grid with the weights:
    /// returns `(T, shift)` with `t = T / 2^(weight_scale + shift)`.
    fn scaled_threshold(&self, t: f64) -> (BigInt, u32) {
        let shift = frac_bits(t).saturating_sub(self.weight_scale);
        (scaled(t, self.weight_scale + shift), shift)
    }

    /// `Σ_K (-1)^{|K|} (T - S_K·2^shift)_+^power`.
    fn signed_sum(&self, threshold: &BigInt, shift: u32, power: usize) -> BigInt {
        let shifted: Vec<BigInt> = self.weights.iter().map(|w| w << shift as usize).collect();
        let mut acc = BigInt::zero();
        // Depth-first over subsets in index order; `remaining` is T - S_K.
        let mut stack: Vec<(usize, BigInt, bool)> = vec![(0, threshold.clone(), false)];
        while let Some((start, remaining, odd)) = stack.pop() {
            let term = num_traits::pow(remaining.clone(), power);
            if odd {
                acc -= term;
            } else {
                acc += term;
            }
            for (i, w) in shifted.iter().enumerate().skip(start) {
                let next = &remaining - w;
                if !next.is_positive() {
                    // Weights are ascending, so later ones overshoot too.
                    break;
                }
                stack.push((i + 1, next, !odd));
            }
        }
        acc
    }

    fn lower_volume(&self, threshold: &BigInt, shift: u32) -> (BigInt, BigInt) {
        let n = self.n;
        let num = self.signed_sum(threshold, shift, n);
        let den = (factorial(n) * &self.weight_product) << (shift as usize * n);
        (num, den)
    }

    /// Volume below the hyperplane `w·x = t`.
    pub(crate) fn volume(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.total {
            return 1.0;
        }
        let (big_t, shift) = self.scaled_threshold(t);
        let total = &self.weight_total << shift as usize;
        if &big_t + &big_t > total {
            let complement = total - big_t;
            let (num, den) = self.lower_volume(&complement, shift);
            return ratio_to_f64(&(&den - &num), &den).clamp(0.0, 1.0);
        }
        let (num, den) = self.lower_volume(&big_t, shift);
        ratio_to_f64(&num, &den).clamp(0.0, 1.0)
    }

    /// `d vol / dt`: the `(n-1)`-volume of the section, over `|w|`.
    pub(crate) fn density(&self, t: f64) -> f64 {
        if t <= 0.0 || t >= self.total {
            return 0.0;
        }
        let n = self.n;
        let (mut big_t, shift) = self.scaled_threshold(t);
        let total = &self.weight_total << shift as usize;
        if &big_t + &big_t > total {
            big_t = total - big_t;
        }
        let num = self.signed_sum(&big_t, shift, n - 1);
        let den = (factorial(n - 1) * &self.weight_product) << (shift as usize * (n - 1));
        libm::ldexp(ratio_to_f64(&num, &den), self.weight_scale as i32).max(0.0)
    }
}
