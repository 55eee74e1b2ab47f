//! Exact Riemann solvers and wave-front tracking for the scaled potential
//! flow system and its isothermal hypersonic small-disturbance limit on a
//! wedge domain `y < b0 * x`.
//!
//! `x` plays the role of time, `y` is the transverse coordinate and the
//! unknown is the state `U = (rho, v)`.

// NaN must fail range checks, hence the negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod analysis;
pub mod error;
pub mod front_tracking;
pub mod numerics;
pub mod riemann;
pub mod semigroup;
pub mod wave_curves;

pub use error::{Error, Result};
pub use wave_curves::{DomainBounds, Family, ModelParams, State, WaveDescriptor, WaveKind};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
