//! Ball arithmetic: midpoint-radius intervals over [`BigFloat`].
//!
//! Radii are tracked with outward (never-shrinking) coarse rounding, so a
//! [`Ball`] always contains the exact value of the expression it was built
//! from. Midpoint rounding error is folded into the radius after every
//! operation. All operations are deterministic.

use super::bigfloat::BigFloat;
use super::funcs;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;
use std::fmt;

/// Upper bound on `a / b` for nonnegative a, positive b: nearest rounding
/// plus a relative pad strictly larger than the rounding deficit.
fn div_up(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let q = a.div_r(b, 48);
    q.add(&q.abs().shift(-40)).round_up_coarse()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigFloat,
    rad: BigFloat, // >= 0
}

impl Ball {
    pub fn exact(mid: BigFloat) -> Self {
        Ball {
            mid,
            rad: BigFloat::zero(),
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Ball::exact(BigFloat::from_bigint(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Ball::exact(BigFloat::from_i64(n))
    }

    pub fn zero() -> Self {
        Ball::exact(BigFloat::zero())
    }

    pub fn one() -> Self {
        Ball::exact(BigFloat::one())
    }

    pub fn new(mid: BigFloat, rad: BigFloat) -> Self {
        debug_assert!(!rad.is_negative());
        Ball { mid, rad }
    }

    /// `num/den` rounded at `prec` bits with a one-ulp radius.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let mid = BigFloat::from_ratio(num, den, prec);
        let rad = mid.ulp_at(prec).round_up_coarse();
        Ball { mid, rad }
    }

    pub fn mid(&self) -> &BigFloat {
        &self.mid
    }

    pub fn rad(&self) -> &BigFloat {
        &self.rad
    }

    pub fn neg(&self) -> Self {
        Ball {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    fn with_rounding(mid_exact: BigFloat, rad_exact: BigFloat, prec: u32) -> Self {
        let mid = mid_exact.round_to(prec);
        let rounding = if mid == mid_exact {
            BigFloat::zero()
        } else {
            mid.ulp_at(prec)
        };
        Ball {
            mid,
            rad: rad_exact.add(&rounding).round_up_coarse(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Self::with_rounding(self.mid.add(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let mid = self.mid.mul(&other.mid);
        // |xy - mx my| <= |mx| ry + |my| rx + rx ry
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        Self::with_rounding(mid, rad, prec)
    }

    /// True iff the ball certifiably excludes zero.
    pub fn excludes_zero(&self) -> bool {
        self.mid.abs().cmp_value(&self.rad) == Ordering::Greater
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        if !other.excludes_zero() {
            return Err(Error::DivisionByZero);
        }
        let mid = self.mid.div_r(&other.mid, prec);
        // |x/y - mx/my| <= (rx + |mx/my| ry) / (|my| - ry)
        let denom_low = other.mid.abs().sub(&other.rad);
        let ulp = mid.ulp_at(prec);
        let num = self.rad.add(&mid.abs().add(&ulp).mul(&other.rad));
        let rad = div_up(&num, &denom_low).add(&ulp).add(&ulp);
        Ok(Ball {
            mid,
            rad: rad.round_up_coarse(),
        })
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(Ball::zero());
        }
        let low = self.mid.sub(&self.rad);
        if !low.is_positive() {
            return Err(Error::NotPositive);
        }
        let mid = self.mid.sqrt_r(prec);
        // |sqrt(x) - sqrt(m)| <= r / (2 sqrt(m - r)) <= r / sqrt(m - r).
        let rad = if self.rad.is_zero() {
            mid.ulp_at(prec)
        } else {
            let den = low.sqrt_r(48);
            div_up(&self.rad, &den).add(&mid.ulp_at(prec))
        };
        Ok(Ball {
            mid,
            rad: rad.round_up_coarse(),
        })
    }

    /// Ball enclosure of the `n`-th root of a positive integer, rounding at
    /// `prec` bits.
    pub fn nth_root_of_bigint(value: &BigInt, n: u32, prec: u32) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::NotPositive);
        }
        let mid = BigFloat::from_bigint(value).nth_root_r(n, prec);
        let rad = mid.ulp_at(prec).round_up_coarse();
        Ok(Ball { mid, rad })
    }

    pub fn exp(&self, prec: u32) -> Self {
        let mid = funcs::exp(&self.mid, prec);
        // |e^x - e^m| <= e^m (e^r - 1) <= 2 e^m r, valid for r <= 5/4.
        debug_assert!(
            self.rad.cmp_value(&BigFloat::from_ratio(
                &BigInt::from(5),
                &BigInt::from(4),
                32
            )) != Ordering::Greater,
            "exp radius bound needs r <= 5/4"
        );
        let prop = mid.abs().mul(&self.rad).shift(1);
        // exp's own truncation error is within a few ulp at prec.
        let ulp = mid.ulp_at(prec).shift(2);
        let rad = prop.add(&ulp);
        Ball {
            mid,
            rad: rad.round_up_coarse(),
        }
    }

    pub fn ln(&self, prec: u32) -> Result<Self> {
        if !self.mid.sub(&self.rad).is_positive() {
            return Err(Error::NotPositive);
        }
        let mid = funcs::ln(&self.mid, prec)?;
        // |ln x - ln m| <= r / (m - r); ln's truncation error is within a
        // few ulp at prec, measured at the scale of ln's argument exponent.
        let prop = div_up(&self.rad, &self.mid.sub(&self.rad));
        let fn_err = BigFloat::power_of_two(-(prec as i64) + 2);
        let rad = prop.add(&fn_err);
        Ok(Ball {
            mid,
            rad: rad.round_up_coarse(),
        })
    }

    /// Floor, certified: `None` when the interval straddles an integer.
    pub fn floor_certified(&self) -> Option<BigInt> {
        let lo = self.mid.sub(&self.rad).floor_bigint();
        let hi = self.mid.add(&self.rad).floor_bigint();
        if lo == hi {
            Some(lo)
        } else {
            None
        }
    }

    /// Fractional part with the same radius, given the certified floor.
    pub fn frac_given_floor(&self, floor: &BigInt) -> Ball {
        Ball {
            mid: self.mid.sub(&BigFloat::from_bigint(floor)),
            rad: self.rad.clone(),
        }
    }

    /// True when the two balls certifiably overlap within `slack`.
    pub fn proximal(&self, other: &Self, slack: &BigFloat) -> bool {
        let dist = self.mid.sub(&other.mid).abs();
        let budget = self.rad.add(&other.rad).add(slack);
        dist.cmp_value(&budget) != Ordering::Greater
    }

    /// Certified strict comparison; `None` when the balls overlap.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        let d = self.mid.sub(&other.mid);
        let r = self.rad.add(&other.rad);
        match d.abs().cmp_value(&r) {
            Ordering::Greater => Some(d.cmp_value(&BigFloat::zero())),
            _ => {
                if self.rad.is_zero() && other.rad.is_zero() && d.is_zero() {
                    Some(Ordering::Equal)
                } else {
                    None
                }
            }
        }
    }

    /// Upper bound on |value|.
    pub fn abs_upper(&self) -> BigFloat {
        self.mid.abs().add(&self.rad)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid.to_decimal(20), self.rad.to_decimal(3))
    }
}

/// Complex ball: independent real/imaginary enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        ComplexBall {
            re,
            im: Ball::zero(),
        }
    }

    pub fn one() -> Self {
        ComplexBall::real(Ball::one())
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let re = self
            .re
            .mul(&other.re, prec)
            .sub(&self.im.mul(&other.im, prec), prec);
        let im = self
            .re
            .mul(&other.im, prec)
            .add(&self.im.mul(&other.re, prec), prec);
        ComplexBall { re, im }
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        let norm = other
            .re
            .mul(&other.re, prec)
            .add(&other.im.mul(&other.im, prec), prec);
        let conj = other.conj();
        let num = self.mul(&conj, prec);
        Ok(ComplexBall {
            re: num.re.div(&norm, prec)?,
            im: num.im.div(&norm, prec)?,
        })
    }

    /// Upper bound on the distance to another complex ball's midpoint.
    pub fn distance_upper(&self, other: &Self) -> BigFloat {
        let dre = self.re.mid().sub(other.re.mid()).abs().add(self.re.rad()).add(other.re.rad());
        let dim = self.im.mid().sub(other.im.mid()).abs().add(self.im.rad()).add(other.im.rad());
        dre.add(&dim) // 1-norm bound, >= euclidean distance
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re.mid().to_decimal(20), self.im.mid().to_decimal(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_add_mul() {
        let third = Ball::from_ratio(&BigInt::from(1), &BigInt::from(3), 128);
        let x = third.mul(&third, 128); // 1/9 enclosed
        let nine = Ball::from_i64(9);
        let one = x.mul(&nine, 128);
        // 1 must lie in the ball.
        let err = one.mid().sub(&BigFloat::one()).abs();
        assert!(err.cmp_value(one.rad()) != Ordering::Greater);
    }

    #[test]
    fn division_certified() {
        let a = Ball::from_i64(1);
        let b = Ball::from_i64(7);
        let q = a.div(&b, 128).unwrap();
        let back = q.mul(&b, 128);
        let err = back.mid().sub(&BigFloat::one()).abs();
        assert!(err.cmp_value(&back.rad().add(&BigFloat::power_of_two(-120))) != Ordering::Greater);
        let zeroish = Ball::new(BigFloat::power_of_two(-200), BigFloat::power_of_two(-100));
        assert!(a.div(&zeroish, 128).is_err());
    }

    #[test]
    fn floor_certification() {
        let x = Ball::new(BigFloat::from_ratio(&BigInt::from(7), &BigInt::from(2), 64), BigFloat::power_of_two(-30));
        assert_eq!(x.floor_certified(), Some(BigInt::from(3)));
        let straddle = Ball::new(BigFloat::from_i64(3), BigFloat::power_of_two(-4));
        assert_eq!(straddle.floor_certified(), None);
    }

    #[test]
    fn cube_root_encloses() {
        let r = Ball::nth_root_of_bigint(&BigInt::from(2), 3, 200).unwrap();
        let cube = r.mul(&r, 200).mul(&r, 200);
        let err = cube.mid().sub(&BigFloat::from_i64(2)).abs();
        assert!(err.cmp_value(&cube.rad().add(&BigFloat::power_of_two(-190))) != Ordering::Greater);
    }
}
