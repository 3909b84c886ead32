//! Deterministic arbitrary-precision real and complex arithmetic.
//!
//! The pipeline needs two numeric regimes: exact symbolic values (handled in
//! [`crate::exact`]) and high-precision floating point with certified error
//! tracking. This module provides the latter: a dyadic [`BigFloat`] with
//! round-to-nearest-even at explicit precisions, [`Ball`] midpoint-radius
//! enclosures, and the elementary functions the local-zeta evaluations need.
//! Nothing here depends on platform floating point, so every result is
//! bit-identical across runs and thread counts.

mod ball;
mod bigfloat;
pub mod funcs;

pub use ball::{Ball, ComplexBall};
pub use bigfloat::BigFloat;
