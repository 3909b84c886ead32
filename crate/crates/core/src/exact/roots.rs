//! Exact roots of unity `exp(2*pi*i*k/n)`.
//!
//! Values are stored as reduced exponent pairs and stay exact through
//! multiplication, powering and conjugation; the degenerate (n = 0) pipeline
//! is exact end-to-end until a final numeric evaluation.

use crate::error::{Error, Result};
use crate::real::{Ball, BigFloat, ComplexBall};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    n: BigInt, // order denominator, >= 1
    k: BigInt, // 0 <= k < n, gcd(k, n) = 1 unless k = 0, n = 1
}

impl RootOfUnity {
    /// `exp(2 pi i k / n)`, reduced so that equal values are structurally
    /// equal: the fraction `k/n` is taken mod 1 and in lowest terms.
    pub fn new(n: BigInt, k: BigInt) -> Result<Self> {
        if n < BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "root-of-unity order must be >= 1, got {n}"
            )));
        }
        let k = k.mod_floor(&n);
        if k.is_zero() {
            return Ok(RootOfUnity {
                n: BigInt::one(),
                k: BigInt::zero(),
            });
        }
        let g = k.gcd(&n);
        Ok(RootOfUnity {
            n: n / &g,
            k: k / &g,
        })
    }

    pub fn one() -> Self {
        RootOfUnity {
            n: BigInt::one(),
            k: BigInt::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.k.is_zero()
    }

    /// -1 as a root of unity.
    pub fn minus_one() -> Self {
        RootOfUnity {
            n: BigInt::from(2),
            k: BigInt::one(),
        }
    }

    pub fn order(&self) -> &BigInt {
        &self.n
    }

    pub fn exponent(&self) -> &BigInt {
        &self.k
    }

    pub fn mul(&self, other: &Self) -> Self {
        // k1/n1 + k2/n2 mod 1
        let n = &self.n * &other.n;
        let k = &self.k * &other.n + &other.k * &self.n;
        RootOfUnity::new(n, k).expect("orders are positive")
    }

    pub fn pow(&self, e: &BigInt) -> Self {
        RootOfUnity::new(self.n.clone(), &self.k * e).expect("order positive")
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow(&BigInt::from(e))
    }

    pub fn conj(&self) -> Self {
        RootOfUnity::new(self.n.clone(), -&self.k).expect("order positive")
    }

    pub fn neg(&self) -> Self {
        self.mul(&Self::minus_one())
    }

    /// `Some(1)` or `Some(-1)` when the value is real, else `None`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_one() {
            Some(BigInt::one())
        } else if self.n == BigInt::from(2) {
            Some(BigInt::from(-1))
        } else {
            None
        }
    }

    /// Numeric value with absolute error `< 2^-precision` per component.
    ///
    /// Requires `precision >= 32`.
    pub fn value(&self, precision: u32) -> Result<ComplexBall> {
        if precision < 32 {
            return Err(Error::PrecisionTooLow(32));
        }
        if let Some(i) = self.as_integer() {
            return Ok(ComplexBall::real(Ball::from_bigint(&i)));
        }
        // Fourth roots are exact too.
        if self.n == BigInt::from(4) {
            let sign = if self.k.is_one() { 1 } else { -1 };
            return Ok(ComplexBall::new(Ball::zero(), Ball::from_i64(sign)));
        }
        let work = precision + 16;
        let theta_num = crate::real::funcs::pi(work + 8).shift(1); // 2 pi
        let angle = theta_num
            .mul(&BigFloat::from_bigint(&self.k))
            .div_r(&BigFloat::from_bigint(&self.n), work);
        let (s, c) = crate::real::funcs::sincos(&angle, work);
        let rad = BigFloat::power_of_two(-(precision as i64) - 2);
        Ok(ComplexBall::new(
            Ball::new(c, rad.clone()),
            Ball::new(s, rad),
        ))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(i) => write!(f, "{}", i),
            None => write!(f, "zeta:{},{}", self.n, self.k),
        }
    }
}
