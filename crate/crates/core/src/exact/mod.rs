//! Exact arithmetic foundation.
//!
//! Arbitrary-precision integers and rationals are `num_bigint::BigInt` and
//! `num_rational::BigRational` (sign-magnitude, eagerly normalized with
//! positive denominators, which is exactly the canonical form the rest of
//! the crate relies on). On top of those sit:
//!
//! * [`QuadInt`] — elements `(a + b*sqrt(d))/c` of a real quadratic field;
//! * [`RootOfUnity`] — exact exponent pairs `exp(2 pi i k/n)`;
//! * [`IntPoly`] — dense integer polynomials, lowest degree first.

mod poly;
mod quad;
mod roots;

pub use poly::IntPoly;
pub use quad::{extract_square_part, QuadInt};
pub use roots::RootOfUnity;
