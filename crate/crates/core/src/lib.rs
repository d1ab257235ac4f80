//! Volumes of halfspace cuts of the unit-volume n-ball and n-cube.
//!
//! Two convex sets of volume `epsilon` inside a unit-volume ball or cube can
//! be pushed apart only by a bounded amount, no matter how large `n` is. This
//! crate computes the quantities behind that statement:
//!
//! * [`specfun`]: log-Gamma, normal CDF/quantile, erf and its inverse, the
//!   regularized incomplete beta function and the Irwin–Hall distribution
//!   (exact big-integer evaluation with a Gaussian branch for large `n`).
//! * [`ball`]: central slab volumes of the unit-volume ball, their Gaussian
//!   limit and the limiting distance `D(epsilon)`.
//! * [`cube`]: diagonal and general-normal halfspace cuts of `[0,1]^n`, the
//!   cut-distance function on the sphere of normals and a multi-start search
//!   for its maximizer.
//! * [`mc`]: reproducible Monte Carlo oracles for all of the above.
//! * [`sweep`]: convergence tables in `n`.

pub mod ball;
pub mod config;
pub mod cube;
mod error;
mod exact;
pub mod mc;
mod nelder_mead;
pub mod quad;
pub mod roots;
pub mod specfun;
pub mod sweep;
mod types;

pub use config::ToleranceConfig;
pub use error::{Error, Result};
pub use types::{ConvergenceRow, Method, Probability, VolumeEstimate};
