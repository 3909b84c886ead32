//! Elementary transcendental functions on [`BigFloat`].
//!
//! Everything is computed by classical integer series in fixed-point
//! arithmetic with explicit guard bits, then rounded once to the requested
//! precision. Each function documents its absolute error bound; the ball
//! layer converts those bounds into radii.

use super::bigfloat::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;

const GUARD: u32 = 32;

/// Fixed-point arctan(1/x) scaled by `2^fbits`, truncation error < 2 units.
fn atan_recip_fixed(x: u64, fbits: u64) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = (BigInt::one() << fbits).div_floor(&BigInt::from(x));
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let contrib = term.div_floor(&BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        term = term.div_floor(&x2);
        k += 1;
    }
    sum
}

/// Fixed-point artanh(1/x) scaled by `2^fbits`, truncation error < 2 units.
fn atanh_recip_fixed(x: u64, fbits: u64) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = (BigInt::one() << fbits).div_floor(&BigInt::from(x));
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += term.div_floor(&BigInt::from(2 * k + 1));
        term = term.div_floor(&x2);
        k += 1;
    }
    sum
}

/// pi with absolute error < 2^(-prec).
pub fn pi(prec: u32) -> BigFloat {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    let fbits = (prec + GUARD) as u64;
    let a = atan_recip_fixed(5, fbits);
    let b = atan_recip_fixed(239, fbits);
    let raw = BigFloat::new(a * 16 - b * 4, -(fbits as i64));
    raw.round_to(prec + 8)
}

/// ln 2 with absolute error < 2^(-prec).
pub fn ln2(prec: u32) -> BigFloat {
    // ln 2 = 2 artanh(1/3).
    let fbits = (prec + GUARD) as u64;
    let raw = BigFloat::new(atanh_recip_fixed(3, fbits) << 1, -(fbits as i64));
    raw.round_to(prec + 8)
}

/// Natural logarithm of a positive value, absolute error < 2^(-prec+1).
pub fn ln(x: &BigFloat, prec: u32) -> crate::Result<BigFloat> {
    if !x.is_positive() {
        return Err(crate::Error::NotPositive);
    }
    let work = prec + GUARD;
    // Normalize to m in [1, 2): x = m * 2^e.
    let e = x.msb() - 1;
    let m = x.shift(-e);
    // ln m = 2 artanh(u), u = (m-1)/(m+1) in [0, 1/3).
    let num = m.sub(&BigFloat::one());
    let den = m.add(&BigFloat::one());
    let u = num.div_r(&den, work);
    let u2 = u.mul_r(&u, work);
    let mut term = u.clone();
    let mut sum = BigFloat::zero();
    let mut k: u64 = 0;
    let cutoff = -(work as i64);
    while !term.is_zero() && term.msb() > cutoff {
        let contrib = term.div_r(&BigFloat::from_i64((2 * k + 1) as i64), work);
        sum = sum.add_r(&contrib, work);
        term = term.mul_r(&u2, work);
        k += 1;
    }
    let ln_m = sum.shift(1);
    let result = ln_m.add(&ln2(work).mul(&BigFloat::from_i64(e)));
    Ok(result.round_to(prec + 4))
}

/// Exponential, absolute error < 2^(-prec+1) * e^x for |x| within desk scale.
pub fn exp(x: &BigFloat, prec: u32) -> BigFloat {
    let work = prec + GUARD;
    if x.is_zero() {
        return BigFloat::one();
    }
    // Range reduction: x = k ln2 + r with r in [0, ln2).
    let l2 = ln2(work + 32);
    let k_f = x.div_r(&l2, 64);
    let k = k_f.floor_bigint();
    let k_i64 = i64::try_from(&k).expect("exp range reduction overflow");
    let r = x.sub(&l2.mul(&BigFloat::from_bigint(&k))).round_to(work);
    // Taylor on r in [0, ~0.7): terms r^j / j!.
    let mut term = BigFloat::one();
    let mut sum = BigFloat::one();
    let mut j: u64 = 1;
    let cutoff = -(work as i64);
    loop {
        term = term.mul_r(&r, work).div_r(&BigFloat::from_i64(j as i64), work);
        if term.is_zero() || term.msb() <= cutoff {
            break;
        }
        sum = sum.add_r(&term, work);
        j += 1;
    }
    sum.shift(k_i64).round_to(prec + 4)
}

/// Simultaneous (sin, cos), absolute error < 2^(-prec+1) each.
pub fn sincos(x: &BigFloat, prec: u32) -> (BigFloat, BigFloat) {
    let work = prec + GUARD + 16;
    let pi_w = pi(work);
    let two_pi = pi_w.shift(1);
    // Reduce mod 2*pi, then fold into a quadrant of width pi/2.
    let q_f = x.div_r(&two_pi, work);
    let turns = q_f.floor_bigint();
    let mut r = x.sub(&two_pi.mul(&BigFloat::from_bigint(&turns))).round_to(work);
    let half_pi = pi_w.shift(-1);
    let mut quadrant = 0u8;
    while r.cmp_value(&half_pi) != Ordering::Less {
        r = r.sub(&half_pi).round_to(work);
        quadrant = (quadrant + 1) % 4;
    }
    if r.is_negative() {
        // Guard against reduction rounding leaving a tiny negative rest.
        r = BigFloat::zero();
    }
    let (s, c) = sincos_taylor(&r, work);
    let (sin, cos) = match quadrant {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (sin.round_to(prec + 4), cos.round_to(prec + 4))
}

fn sincos_taylor(r: &BigFloat, work: u32) -> (BigFloat, BigFloat) {
    let mut sin = BigFloat::zero();
    let mut cos = BigFloat::zero();
    let mut term = BigFloat::one(); // r^j / j!
    let mut j: u64 = 0;
    let cutoff = -(work as i64);
    loop {
        match j % 4 {
            0 => cos = cos.add_r(&term, work),
            1 => sin = sin.add_r(&term, work),
            2 => cos = cos.sub_r(&term, work),
            _ => sin = sin.sub_r(&term, work),
        }
        j += 1;
        term = term
            .mul_r(r, work)
            .div_r(&BigFloat::from_i64(j as i64), work);
        if term.is_zero() || term.msb() <= cutoff {
            break;
        }
    }
    (sin, cos)
}

/// `base^(num/den)` for positive base, error < 2^(-prec+2) relative.
/// Integer exponents use exact binary powering before a single rounding.
pub fn pow_rational(
    base: &BigFloat,
    num: &BigInt,
    den: &BigInt,
    prec: u32,
) -> crate::Result<BigFloat> {
    if !base.is_positive() {
        return Err(crate::Error::NotPositive);
    }
    if den.is_one() {
        let e = i64::try_from(num).map_err(|_| {
            crate::Error::InvalidArgument("exponent out of range".into())
        })?;
        return Ok(pow_i64(base, e, prec));
    }
    let work = prec + GUARD;
    let l = ln(base, work)?;
    let s = BigFloat::from_ratio(num, den, work);
    Ok(exp(&l.mul_r(&s, work), prec))
}

/// `base^e` with exact powering of the dyadic mantissa, one final rounding.
pub fn pow_i64(base: &BigFloat, e: i64, prec: u32) -> BigFloat {
    if e == 0 {
        return BigFloat::one();
    }
    let mut result = BigFloat::one();
    let mut acc = base.clone();
    let mut n = e.unsigned_abs();
    let work = prec + GUARD;
    while n > 0 {
        if n & 1 == 1 {
            result = result.mul_r(&acc, work);
        }
        acc = acc.mul_r(&acc, work);
        n >>= 1;
    }
    if e < 0 {
        result = BigFloat::one().div_r(&result, work);
    }
    result.round_to(prec + 4)
}
