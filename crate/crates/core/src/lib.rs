//! Exact Heegaard Floer correction terms of lens spaces and integer
//! surgeries, and the rational genus bounds they give.
//!
//! Everything is computed in exact rational arithmetic. The main entry
//! points are [`lensd::d_all`] for lens-space tables,
//! [`theta::theta_lower_bound`] and [`theta::simple_knot_invariants`] for
//! genus bounds, and [`surgery::dual_theta_bound`] for surgery duals.

pub mod atlas;
pub mod cli;
pub mod error;
pub mod lens;
pub mod lensd;
pub mod oracle;
pub mod parallel;
pub mod rational;
pub mod surgery;
pub mod theta;

pub use error::{Error, Result};
pub use lens::{
    normalize_lens, order_of, CorrectionTerms, HomologyClass, LabelConvention, LensSpaceId,
    SpinCLabel,
};
pub use rational::ExactRational;
