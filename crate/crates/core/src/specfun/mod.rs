//! Scalar special functions.
//!
//! Every function here is a pure function of its arguments (and, where a
//! `_with` variant exists, of an immutable [`ToleranceConfig`]).
//!
//! [`ToleranceConfig`]: crate::ToleranceConfig

mod beta;
mod gamma;
mod irwin_hall;
mod normal;

pub use beta::{ln_beta, reg_inc_beta};
pub use gamma::{log_gamma, stirling_log_gamma};
pub use irwin_hall::{
    berry_esseen_bound, berry_esseen_bound_with, irwin_hall_cdf, irwin_hall_cdf_with, irwin_hall_gaussian_cdf,
    irwin_hall_pdf, irwin_hall_quantile, irwin_hall_quantile_with, irwin_hall_sup_gap, UNIFORM_ABS_THIRD_MOMENT,
    UNIFORM_VARIANCE,
};
pub use normal::{erf, erf_inverse, erfc, std_normal_cdf, std_normal_pdf, std_normal_quantile};
