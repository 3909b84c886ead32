//! Exact real quadratic field elements `(a + b*sqrt(d)) / c`.
//!
//! Values are kept in a canonical form: `c > 0`, `gcd(a, b, c) = 1`, `d`
//! square-free. Rational values normalize to `b = 0, d = 2`, so equality and
//! hashing are structural. Arithmetic between values from different quadratic
//! fields is refused (the pipeline never mixes fields); rationals embed into
//! every field.

use crate::error::{Error, Result};
use crate::exact::poly::IntPoly;
use crate::real::{Ball, BigFloat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Marker radicand for rational values.
fn rational_d() -> BigInt {
    BigInt::from(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadInt {
    /// Builds `(a + b*sqrt(d))/c` in canonical form.
    ///
    /// The square part of `d` is folded into `b`; a radicand reduced to 1
    /// collapses to a rational. Negative or zero radicands with `b != 0`
    /// are rejected (only real quadratic fields are supported).
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.is_zero() {
            return Ok(Self::canonical(a, BigInt::zero(), c, rational_d()));
        }
        if d.sign() != num_bigint::Sign::Plus {
            return Err(Error::NegativeRadicand(d));
        }
        let (square_root, reduced) = extract_square_part(&d);
        let b2 = b * square_root;
        if reduced.is_one() {
            return Ok(Self::canonical(a + b2, BigInt::zero(), c, rational_d()));
        }
        Ok(Self::canonical(a, b2, c, reduced))
    }

    fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: BigInt) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if a.is_zero() && b.is_zero() {
            c = BigInt::one();
        }
        let d = if b.is_zero() { rational_d() } else { d };
        QuadInt { a, b, c, d }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::canonical(n, BigInt::zero(), BigInt::one(), rational_d())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::canonical(
            r.numer().clone(),
            BigInt::zero(),
            r.denom().clone(),
            rational_d(),
        )
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: BigInt) -> Result<Self> {
        Self::new(BigInt::zero(), BigInt::one(), BigInt::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn coeff_a(&self) -> &BigInt {
        &self.a
    }

    pub fn coeff_b(&self) -> &BigInt {
        &self.b
    }

    pub fn denom(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.c.is_one() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.a.clone(), self.c.clone()))
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.c.is_one()
    }

    /// The common radicand of two values, refusing mixed fields.
    pub fn common_field(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(rational_d()),
            (true, false) => Ok(other.d.clone()),
            (false, true) => Ok(self.d.clone()),
            (false, false) => {
                if self.d == other.d {
                    Ok(self.d.clone())
                } else {
                    Err(Error::MixedField(self.d.clone(), other.d.clone()))
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let a = &self.a * &other.c + &other.a * &self.c;
        let b = &self.b * &other.c + &other.b * &self.c;
        let c = &self.c * &other.c;
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &d;
        let b = &self.a * &other.b + &self.b * &other.a;
        let c = &self.c * &other.c;
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.checked_mul(&other.inv()?)?)
    }

    pub fn neg(&self) -> Self {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Galois conjugate `(a - b*sqrt(d))/c`.
    pub fn conj(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/x = conj(x) / (x * conj(x)) = c(a - b sqrt d) / (a^2 - b^2 d).
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        debug_assert!(!n.is_zero(), "norm of a nonzero field element is nonzero");
        Ok(Self::canonical(
            &self.c * &self.a,
            -(&self.c * &self.b),
            n,
            self.d.clone(),
        ))
    }

    /// `self^e` for a signed exponent.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = base;
        let mut result = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                result = result.checked_mul(&acc)?;
            }
            n >>= 1;
            if n > 0 {
                acc = acc.checked_mul(&acc)?;
            }
        }
        Ok(result)
    }

    /// Field trace `x + conj(x) = 2a/c`.
    pub fn trace(&self) -> BigRational {
        BigRational::new(&self.a << 1u32, self.c.clone())
    }

    /// Field norm `x * conj(x) = (a^2 - b^2 d) / c^2`.
    pub fn norm(&self) -> BigRational {
        BigRational::new(
            &self.a * &self.a - &self.b * &self.b * &self.d,
            &self.c * &self.c,
        )
    }

    /// Trace and norm as a pair.
    pub fn trace_norm(&self) -> (BigRational, BigRational) {
        (self.trace(), self.norm())
    }

    /// The primitive integer polynomial of degree <= 2 vanishing at `self`,
    /// with positive leading coefficient. Degree 1 exactly for rationals.
    pub fn minimal_polynomial(&self) -> IntPoly {
        if self.is_rational() {
            return IntPoly::new(vec![-self.a.clone(), self.c.clone()]).primitive();
        }
        let c2 = &self.c * &self.c;
        let lin = -(&self.a * &self.c) << 1u32;
        let cst = &self.a * &self.a - &self.b * &self.b * &self.d;
        IntPoly::new(vec![cst, lin, c2]).primitive()
    }

    /// Sign of the real value under the embedding `sqrt(d) > 0`.
    pub fn signum(&self) -> Ordering {
        // c > 0, so the sign is that of a + b*sqrt(d).
        let sa = self.a.sign();
        let sb = self.b.sign();
        use num_bigint::Sign::*;
        match (sa, sb) {
            (NoSign, NoSign) => Ordering::Equal,
            (NoSign, Plus) | (Plus, NoSign) | (Plus, Plus) => Ordering::Greater,
            (NoSign, Minus) | (Minus, NoSign) | (Minus, Minus) => Ordering::Less,
            (Plus, Minus) | (Minus, Plus) => {
                // Compare a^2 against b^2 d; equality is impossible since d is
                // not a perfect square.
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &self.d;
                if lhs > rhs {
                    // |a| dominates
                    if sa == Plus {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                } else if sb == Plus {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Value comparison within a common field.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Exact floor under the real embedding.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        // b*sqrt(d) lies strictly between consecutive integers s, s+1 (or
        // -s-1, -s for negative b) because d is not a perfect square.
        let n = &self.b * &self.b * &self.d;
        let s = n.sqrt();
        let approx = if self.b.is_positive() {
            &self.a + s
        } else {
            &self.a - s - BigInt::one()
        };
        approx.div_floor(&self.c)
    }

    /// Enclosure of the real value at `prec` bits.
    pub fn to_ball(&self, prec: u32) -> Ball {
        if self.is_rational() {
            return Ball::from_ratio(&self.a, &self.c, prec);
        }
        let root = Ball::exact(BigFloat::from_bigint(&self.d))
            .sqrt(prec + 8)
            .expect("positive radicand");
        let num = Ball::from_bigint(&self.b)
            .mul(&root, prec + 8)
            .add(&Ball::from_bigint(&self.a), prec + 8);
        num.div(&Ball::from_bigint(&self.c), prec)
            .expect("nonzero denominator")
    }

    /// Expresses `self = u + v * theta` over the rationals, for an
    /// irrational `theta` in the same field.
    pub fn decompose_in_basis(&self, theta: &Self) -> Result<(BigRational, BigRational)> {
        if theta.is_rational() {
            return Err(Error::RationalInput);
        }
        self.common_field(theta)?;
        // v = (b/c) / (b_t/c_t), u = a/c - v * a_t/c_t.
        let v = BigRational::new(&self.b * &theta.c, &self.c * &theta.b);
        let u = BigRational::new(self.a.clone(), self.c.clone())
            - &v * BigRational::new(theta.a.clone(), theta.c.clone());
        Ok((u, v))
    }

    /// The `quad:a,b,c,d` grammar form.
    pub fn spec_string(&self) -> String {
        format!("quad:{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.c.is_one() {
                return write!(f, "{}", self.a);
            }
            return write!(f, "{}/{}", self.a, self.c);
        }
        let num = if self.a.is_zero() {
            format!("{}√{}", coeff_str(&self.b), self.d)
        } else if self.b.is_negative() {
            let mb = -&self.b;
            format!("{} - {}√{}", self.a, coeff_str(&mb), self.d)
        } else {
            format!("{} + {}√{}", self.a, coeff_str(&self.b), self.d)
        };
        if self.c.is_one() {
            write!(f, "{}", num)
        } else {
            write!(f, "({})/{}", num, self.c)
        }
    }
}

fn coeff_str(b: &BigInt) -> String {
    if b.is_one() {
        String::new()
    } else {
        b.to_string()
    }
}

/// Splits `n > 0` as `f^2 * m` with `m` square-free, returning `(f, m)`.
/// Trial division; intended for desk-scale radicands.
pub fn extract_square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.clone();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let p2 = &p * &p;
        while (&m % &p2).is_zero() {
            m /= &p2;
            f *= &p;
        }
        if p.bits() > 17 {
            // Square factors beyond 2^34 are out of desk scale; accept m.
            break;
        }
        p += 1;
    }
    (f, m)
}
