//! Exact and high-precision kernels for the L-function pipeline of
//! even-dimensional noncommutative tori with real multiplication.
//!
//! The crate is organised around the pipeline stages:
//!
//! * [`exact`] — arbitrary-precision integers, rationals, quadratic field
//!   elements, roots of unity and integer polynomials.
//! * [`real`] — deterministic dyadic floating point and ball arithmetic.
//! * [`zlinalg`] — exact integer/rational linear algebra: characteristic
//!   polynomials, Smith normal forms, similarity tests, Perron–Frobenius data.
//! * [`cfrac`] — periodic continued fractions, fundamental units, the matrix
//!   with prescribed Perron–Frobenius eigenvector, and a heuristic
//!   Jacobi–Perron mode.
//! * [`teich`] — the endomorphism-level functor between complex- and
//!   real-multiplication lattices, unit projection and unit indices.
//! * [`torus`] — skew-symmetric parameter matrices, normal forms, trace
//!   lattices, real-multiplication detection and group actions.
//! * [`elliptic`] — curve models, point counts over prime fields and
//!   Hasse–Weil local factors.
//! * [`lfunc`] — local zeta factors, Dirichlet characters, Euler products and
//!   the prime-by-prime comparison report.

pub mod cfrac;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod grammar;
pub mod lfunc;
pub mod primes;
pub mod real;
pub mod teich;
pub mod torus;
pub mod zlinalg;

pub use error::{Error, Result};
pub use exact::{IntPoly, QuadInt, RootOfUnity};
pub use real::{Ball, BigFloat, ComplexBall};
pub use zlinalg::{IntMatrix, Matrix};
