//! Deterministic dyadic floating point.
//!
//! A [`BigFloat`] is an exact dyadic rational `mant * 2^exp`. Addition,
//! subtraction and multiplication are exact; the `*_r` variants round the
//! result to a caller-supplied precision with round-to-nearest-even. Every
//! operation is a pure function of its operands and the precision, so results
//! are bit-identical across runs, platforms and thread counts.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    /// Builds `mant * 2^exp`, stripping trailing zero bits so that equal
    /// values have equal representations.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return BigFloat { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            BigFloat {
                mant: &mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            BigFloat { mant, exp }
        }
    }

    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        BigFloat::new(BigInt::one(), 0)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        BigFloat::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        BigFloat::new(BigInt::from(n), 0)
    }

    /// `2^e`.
    pub fn power_of_two(e: i64) -> Self {
        BigFloat {
            mant: BigInt::one(),
            exp: e,
        }
    }

    /// Rounded quotient `num / den` at `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        Self::div_r(&Self::from_bigint(num), &Self::from_bigint(den), prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Number of significant bits of the mantissa.
    pub fn bit_len(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    /// Exponent of the most significant bit: `2^(msb-1) <= |x| < 2^msb`.
    /// Zero returns `i64::MIN`.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bit_len() as i64
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            self.clone()
        } else {
            BigFloat {
                mant: self.mant.clone(),
                exp: self.exp + k,
            }
        }
    }

    /// Exact addition (mantissas are aligned, no rounding).
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        BigFloat::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact multiplication.
    pub fn mul(&self, other: &Self) -> Self {
        BigFloat::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn add_r(&self, other: &Self, prec: u32) -> Self {
        self.add(other).round_to(prec)
    }

    pub fn sub_r(&self, other: &Self, prec: u32) -> Self {
        self.sub(other).round_to(prec)
    }

    pub fn mul_r(&self, other: &Self, prec: u32) -> Self {
        self.mul(other).round_to(prec)
    }

    /// Rounds to `prec` significant bits, round-to-nearest-even.
    pub fn round_to(&self, prec: u32) -> Self {
        let bits = self.bit_len();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let mag = round_mag(self.mant.magnitude(), drop, false);
        let mant = BigInt::from_biguint(self.mant.sign(), mag);
        BigFloat::new(mant, self.exp + drop as i64)
    }

    /// Rounded division at `prec` bits (round-to-nearest-even).
    pub fn div_r(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let na = self.bit_len() as i64;
        let nb = other.bit_len() as i64;
        // Shift the numerator so the raw quotient carries prec + 3 bits.
        let shift = prec as i64 + 3 + nb - na;
        let (num, den) = if shift >= 0 {
            (&self.mant << shift as u64, other.mant.clone())
        } else {
            (self.mant.clone(), &other.mant << (-shift) as u64)
        };
        let (q, r) = num.div_rem(&den);
        let sticky = !r.is_zero();
        let exp = self.exp - other.exp - shift;
        round_with_sticky(q, exp, prec, sticky)
    }

    /// Rounded square root at `prec` bits. Panics on negative input.
    pub fn sqrt_r(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of negative value");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale so the integer sqrt carries at least prec + 3 bits and the
        // exponent stays even.
        let bits = self.bit_len() as i64;
        let mut shift = 2 * (prec as i64 + 3) - bits;
        if shift < 0 {
            shift = 0;
        }
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled = self.mant.magnitude() << shift as u64;
        let root = scaled.sqrt();
        let sticky = &root * &root != scaled;
        round_with_sticky(
            BigInt::from(root),
            (self.exp - shift) / 2,
            prec,
            sticky,
        )
    }

    /// Rounded `n`-th root at `prec` bits, for positive input.
    pub fn nth_root_r(&self, n: u32, prec: u32) -> Self {
        assert!(self.is_positive(), "nth_root of non-positive value");
        assert!(n >= 1);
        let bits = self.bit_len() as i64;
        let n_i = n as i64;
        let mut shift = n_i * (prec as i64 + 3) - bits;
        if shift < 0 {
            shift = 0;
        }
        let rem = (self.exp - shift).rem_euclid(n_i);
        shift += rem; // make the exponent divisible by n
        let scaled = self.mant.magnitude() << shift as u64;
        let root = scaled.nth_root(n);
        let sticky = num_traits::pow::pow(root.clone(), n as usize) != scaled;
        round_with_sticky(
            BigInt::from(root),
            (self.exp - shift) / n_i,
            prec,
            sticky,
        )
    }

    /// Value comparison (exact).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (Sign::Minus, Sign::Plus) | (Sign::Minus, Sign::NoSign) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) | (Sign::Plus, Sign::NoSign) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // Same nonzero sign: compare magnitudes cheaply via msb first.
        let ma = self.msb();
        let mb = other.msb();
        let positive = self.mant.is_positive();
        if ma != mb {
            let mag_cmp = ma.cmp(&mb);
            return if positive { mag_cmp } else { mag_cmp.reverse() };
        }
        self.sub(other).mant.cmp(&BigInt::zero())
    }

    /// Greatest integer `<= self` (exact).
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            self.mant.div_floor(&(BigInt::one() << (-self.exp) as u64))
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0
    }

    /// Exact conversion to a (num, den) pair with `den = 2^k`.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.mant << self.exp as u64, BigInt::one())
        } else {
            (self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Upper bound on the error of a nearest rounding at `prec` bits that
    /// produced this value: `2^(msb - prec)`. Exact zeros (which only arise
    /// from exact operations) report zero error. Robust against the
    /// trailing-zero normalization, which makes the stored exponent
    /// unrelated to the rounding position.
    pub fn ulp_at(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::power_of_two(self.msb() - prec as i64)
    }

    /// Rounds the magnitude up to at most 16 mantissa bits, toward +inf.
    /// Used for error radii, which must never shrink when rounded.
    pub fn round_up_coarse(&self) -> Self {
        const RAD_BITS: u64 = 16;
        let bits = self.bit_len();
        if bits <= RAD_BITS {
            return self.abs();
        }
        let drop = bits - RAD_BITS;
        let mag = (self.mant.magnitude() >> drop) + 1u32;
        BigFloat::new(BigInt::from(mag), self.exp + drop as i64)
    }

    /// Approximate f64 value (diagnostics only; never used in outputs).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bit_len();
        let (m, e) = if bits > 64 {
            let drop = bits - 64;
            let m = self.mant.magnitude() >> drop;
            (m.to_u64_digits()[0] as f64, self.exp + drop as i64)
        } else {
            let m = self.mant.magnitude().to_u64_digits();
            (if m.is_empty() { 0.0 } else { m[0] as f64 }, self.exp)
        };
        let signed = if self.mant.is_negative() { -m } else { m };
        signed * 2f64.powi(e as i32)
    }

    /// Formats with exactly `digits` significant decimal digits,
    /// round-half-even. Exact integers format without a decimal point.
    pub fn to_decimal(&self, digits: u32) -> String {
        format_decimal(self, digits)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

/// Round-half-even of a magnitude dropping `drop` low bits; `sticky` marks
/// discarded nonzero bits below the ones being dropped.
fn round_mag(mag: &BigUint, drop: u64, sticky: bool) -> BigUint {
    if drop == 0 {
        return mag.clone();
    }
    let q = mag >> drop;
    let rem = mag - (&q << drop);
    let half = BigUint::one() << (drop - 1);
    match rem.cmp(&half) {
        Ordering::Less => q,
        Ordering::Greater => q + 1u32,
        Ordering::Equal => {
            if sticky || q.bit(0) {
                q + 1u32
            } else {
                q
            }
        }
    }
}

fn round_with_sticky(mant: BigInt, exp: i64, prec: u32, sticky: bool) -> BigFloat {
    let bits = mant.magnitude().bits();
    if bits <= prec as u64 {
        // Sticky bits below an exactly-representable value are dropped: the
        // quotient already carries >= prec+3 bits unless the result is exact.
        if sticky {
            // Result not exact but short; keep as-is (error < 1 ulp at prec+3).
            return BigFloat::new(mant, exp);
        }
        return BigFloat::new(mant, exp);
    }
    let drop = bits - prec as u64;
    let mag = round_mag(mant.magnitude(), drop, sticky);
    BigFloat::new(BigInt::from_biguint(mant.sign(), mag), exp + drop as i64)
}

/// Decimal formatting with a fixed count of significant digits.
fn format_decimal(x: &BigFloat, digits: u32) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_integer() {
        let v = &x.mant << x.exp as u64;
        return v.to_string();
    }
    let neg = x.is_negative();
    let mag_mant = x.mant.magnitude().clone();
    let e = x.exp; // e < 0 here
    debug_assert!(e < 0);
    let den = BigUint::one() << (-e) as u64;

    // Estimate the decimal exponent: |x| = mant/den, d10 ~ log10(|x|).
    let bit_diff = mag_mant.bits() as i64 + e; // log2(|x|) in [bit_diff-1, bit_diff)
    let mut k = digits as i64 - 1 - floor_log10_from_log2(bit_diff);
    loop {
        // scaled = round(|x| * 10^k) to an integer, half-even.
        let (num, d) = if k >= 0 {
            (&mag_mant * BigUint::from(10u32).pow(k as u32), den.clone())
        } else {
            (mag_mant.clone(), &den * BigUint::from(10u32).pow((-k) as u32))
        };
        let (q, r) = num.div_rem(&d);
        let twice = &r << 1u32;
        let scaled = match twice.cmp(&d) {
            Ordering::Less => q,
            Ordering::Greater => q + 1u32,
            Ordering::Equal => {
                if q.bit(0) {
                    q + 1u32
                } else {
                    q
                }
            }
        };
        let s = scaled.to_string();
        let n = s.len() as i64;
        if n == digits as i64 {
            return place_point(&s, k, neg);
        }
        // Rounding may have produced one digit too many (e.g. 999.96 -> 1000.0)
        // or the estimate was off by one; adjust and retry.
        k += digits as i64 - n;
    }
}

/// floor(log10(2^b)) for the bit bound `b`, accurate enough for a first
/// guess (the formatting loop corrects off-by-one estimates).
fn floor_log10_from_log2(b: i64) -> i64 {
    // log10(2) = 0.30102999566398...; scaled integer arithmetic avoids floats.
    (b * 30103).div_euclid(100000)
}

/// Renders `digits` significant digits `s` scaled by `10^-k` with a sign.
fn place_point(s: &str, k: i64, neg: bool) -> String {
    let n = s.len() as i64;
    let point = n - k; // digits before the decimal point
    let body = if k <= 0 {
        // Integer with |k| trailing zeros.
        let mut t = s.to_string();
        for _ in 0..(-k) {
            t.push('0');
        }
        t
    } else if point > 0 && point <= n {
        if point == n {
            s.to_string()
        } else {
            format!("{}.{}", &s[..point as usize], &s[point as usize..])
        }
    } else if point > -6 {
        // 0.000ddd form for small magnitudes.
        let zeros = (-point) as usize;
        format!("0.{}{}", "0".repeat(zeros), s)
    } else {
        // Scientific notation for very small magnitudes.
        let exp10 = point - 1;
        if s.len() == 1 {
            format!("{}e{}", s, exp10)
        } else {
            format!("{}.{}e{}", &s[..1], &s[1..], exp10)
        }
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(m: i64, e: i64) -> BigFloat {
        BigFloat::new(BigInt::from(m), e)
    }

    #[test]
    fn exact_ops() {
        let a = bf(3, 0);
        let b = bf(1, -1); // 0.5
        assert_eq!(a.add(&b), bf(7, -1));
        assert_eq!(a.sub(&b), bf(5, -1));
        assert_eq!(a.mul(&b), bf(3, -1));
    }

    #[test]
    fn division_round_trip() {
        let a = bf(1, 0);
        let b = bf(3, 0);
        let q = a.div_r(&b, 128);
        let back = q.mul(&b);
        let err = back.sub(&a).abs();
        assert!(err.cmp_value(&BigFloat::power_of_two(-126)) == Ordering::Less);
    }

    #[test]
    fn sqrt_two() {
        let two = bf(2, 0);
        let r = two.sqrt_r(200);
        let sq = r.mul(&r);
        let err = sq.sub(&two).abs();
        assert!(err.cmp_value(&BigFloat::power_of_two(-195)) == Ordering::Less);
    }

    #[test]
    fn nth_root() {
        let x = bf(2, 0);
        let r = x.nth_root_r(3, 200);
        let cube = r.mul(&r).mul(&r);
        let err = cube.sub(&x).abs();
        assert!(err.cmp_value(&BigFloat::power_of_two(-195)) == Ordering::Less);
    }

    #[test]
    fn floor_values() {
        assert_eq!(bf(7, -1).floor_bigint(), BigInt::from(3)); // 3.5
        assert_eq!(bf(-7, -1).floor_bigint(), BigInt::from(-4)); // -3.5
        assert_eq!(bf(4, 0).floor_bigint(), BigInt::from(4));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(bf(1, -1).to_decimal(20), "0.50000000000000000000");
        assert_eq!(bf(3, 0).to_decimal(20), "3");
        assert_eq!(bf(-7, -2).to_decimal(5), "-1.7500");
        // round-half-even at the displayed digit
        let x = bf(5, -2); // 1.25
        assert_eq!(x.to_decimal(2), "1.2");
        let y = bf(7, -2); // 1.75
        assert_eq!(y.to_decimal(2), "1.8");
    }

    #[test]
    fn comparison() {
        assert_eq!(bf(1, 10).cmp_value(&bf(1023, 0)), Ordering::Greater);
        assert_eq!(bf(1, 10).cmp_value(&bf(1024, 0)), Ordering::Equal);
        assert_eq!(bf(-3, 0).cmp_value(&bf(1, -5)), Ordering::Less);
    }
}
