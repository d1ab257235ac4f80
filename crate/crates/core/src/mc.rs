//! Monte Carlo oracles for the exact volume and distance computations.
//!
//! Samples are drawn in fixed chunks of [`CHUNK_SIZE`]; chunk `i` uses a
//! ChaCha8 generator seeded from `seed` on stream `i`. Chunks are
//! processed by a pool of `workers` threads and reduced with integer sums
//! and `min`, so every estimate is a function of `(seed, samples)` alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{unit_ball_radius, BallSlabSpec};
use crate::cube::CubeCutSpec;
use crate::error::{check_dimension, Error, Result};

pub const CHUNK_SIZE: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub samples: usize,
    pub workers: usize,
}

impl McConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, workers: 1 }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::domain("samples must be >= 1"));
        }
        if self.workers == 0 {
            return Err(Error::domain("workers must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub samples: usize,
}

impl McEstimate {
    /// Binomial estimate from `hits` out of `samples`.
    pub fn from_counts(hits: usize, samples: usize) -> Self {
        let p = hits as f64 / samples as f64;
        let std_error = (p * (1.0 - p) / samples as f64).sqrt();
        Self { mean: p, std_error, ci95_low: p - 1.96 * std_error, ci95_high: p + 1.96 * std_error, samples }
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn contains(&self, value: f64, k: f64) -> bool {
        (value - self.mean).abs() <= k * self.std_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    /// `[0, 1]^n`.
    Cube,
    /// The unit-volume ball centred at the origin.
    Ball,
}

/// `{x : normal·x <= offset}`; the normal need not be unit or nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dot(&self.normal, x) <= self.offset
    }
}

/// What to measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum McTarget {
    /// A cut of the cube.
    CubeCut(CubeCutSpec),
    /// The slab `0 <= x₁ <= d` of the ball.
    BallSlab(BallSlabSpec),
    /// A general halfspace intersected with a body.
    Halfspace { body: Body, n: usize, halfspace: Halfspace },
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The generator for chunk `chunk` under `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Fills `out` with a uniform point of `[0, 1]^n`.
pub fn sample_cube<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = rng.gen::<f64>();
    }
}

/// Fills `out` with a uniform point of the ball of radius `radius`:
/// a normalized Gaussian direction scaled by `radius · U^{1/n}`.
pub fn sample_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64, out: &mut [f64]) {
    let n = out.len() as f64;
    loop {
        let mut norm2 = 0.0;
        for x in out.iter_mut() {
            *x = rng.sample(StandardNormal);
            norm2 += *x * *x;
        }
        if norm2 > 0.0 {
            let r = radius * rng.gen::<f64>().powf(1.0 / n) / norm2.sqrt();
            out.iter_mut().for_each(|x| *x *= r);
            return;
        }
    }
}

struct Sampler {
    body: Body,
    n: usize,
    radius: f64,
}

impl Sampler {
    fn new(body: Body, n: usize) -> Result<Self> {
        check_dimension(n, 1)?;
        let radius = match body {
            Body::Cube => 1.0,
            Body::Ball => unit_ball_radius(n)?,
        };
        Ok(Self { body, n, radius })
    }

    fn fill<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        match self.body {
            Body::Cube => sample_cube(rng, out),
            Body::Ball => sample_ball(rng, self.radius, out),
        }
    }
}

/// Runs `work(chunk_index, chunk_len)` over all chunks on `cfg.workers`
/// threads; results come back in chunk order.
fn map_chunks<T, F>(cfg: &McConfig, work: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, usize) -> T + Sync,
{
    cfg.validate()?;
    let chunks = cfg.samples.div_ceil(CHUNK_SIZE);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::capability(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let len = CHUNK_SIZE.min(cfg.samples - c * CHUNK_SIZE);
                work(c as u64, len)
            })
            .collect()
    }))
}

type Membership = Box<dyn Fn(&[f64]) -> bool + Sync>;

/// Fraction of samples of the body that fall in the target region.
pub fn estimate_halfspace_volume(target: &McTarget, cfg: &McConfig) -> Result<McEstimate> {
    let (sampler, member): (Sampler, Membership) = match target {
        McTarget::CubeCut(cut) => {
            let normal = cut.normal.components().to_vec();
            let t = cut.threshold;
            (Sampler::new(Body::Cube, cut.dim())?, Box::new(move |x| dot(&normal, x) <= t))
        }
        McTarget::BallSlab(slab) => {
            let d = slab.d;
            (Sampler::new(Body::Ball, slab.n)?, Box::new(move |x| x[0] >= 0.0 && x[0] <= d))
        }
        McTarget::Halfspace { body, n, halfspace } => {
            if halfspace.normal.len() != *n {
                return Err(Error::domain("halfspace normal length must equal n"));
            }
            let h = halfspace.clone();
            (Sampler::new(*body, *n)?, Box::new(move |x| h.contains(x)))
        }
    };
    let hits = map_chunks(cfg, |chunk, len| {
        let mut rng = chunk_rng(cfg.seed, chunk);
        let mut x = vec![0.0; sampler.n];
        (0..len)
            .filter(|_| {
                sampler.fill(&mut rng, &mut x);
                member(&x)
            })
            .count()
    })?;
    Ok(McEstimate::from_counts(hits.iter().sum(), cfg.samples))
}

/// Empirical distance between two halfspace regions of a body.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetDistanceEstimate {
    /// Smallest distance between an accepted point of A and one of B.
    pub distance: f64,
    pub accepted_a: usize,
    pub accepted_b: usize,
    pub samples: usize,
}

/// Upper bound on `dist(A, B)` from the closest pair of accepted samples.
///
/// Fails with [`Error::Estimation`] if either region receives no samples.
pub fn estimate_set_distance(
    body: Body,
    n: usize,
    a: &Halfspace,
    b: &Halfspace,
    cfg: &McConfig,
) -> Result<SetDistanceEstimate> {
    if a.normal.len() != n || b.normal.len() != n {
        return Err(Error::domain("halfspace normal length must equal n"));
    }
    let sampler = Sampler::new(body, n)?;
    let parts = map_chunks(cfg, |chunk, len| {
        let mut rng = chunk_rng(cfg.seed, chunk);
        let mut x = vec![0.0; n];
        let (mut in_a, mut in_b) = (Vec::new(), Vec::new());
        for _ in 0..len {
            sampler.fill(&mut rng, &mut x);
            if a.contains(&x) {
                in_a.extend_from_slice(&x);
            }
            if b.contains(&x) {
                in_b.extend_from_slice(&x);
            }
        }
        (in_a, in_b)
    })?;
    let (mut pts_a, mut pts_b) = (Vec::new(), Vec::new());
    for (pa, pb) in parts {
        pts_a.extend(pa);
        pts_b.extend(pb);
    }
    let (accepted_a, accepted_b) = (pts_a.len() / n, pts_b.len() / n);
    if accepted_a == 0 || accepted_b == 0 {
        return Err(Error::Estimation(format!(
            "no accepted samples (A: {accepted_a}, B: {accepted_b}) out of {}",
            cfg.samples
        )));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::capability(format!("cannot start worker pool: {e}")))?;
    let min_sq = pool.install(|| {
        pts_a
            .par_chunks(n)
            .map(|p| {
                pts_b
                    .chunks(n)
                    .map(|q| p.iter().zip(q).map(|(u, v)| (u - v) * (u - v)).sum::<f64>())
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min)
    });
    Ok(SetDistanceEstimate { distance: min_sq.sqrt(), accepted_a, accepted_b, samples: cfg.samples })
}
