//! Elliptic curves over the rationals: reduction mod p, point counts over
//! F_p, Frobenius traces and Hasse–Weil local factors.
//!
//! Counting is by full enumeration with Legendre symbols
//! (`#E(F_p) = 1 + sum_x (1 + (f(x)|p))`), O(p log p) per prime, which is the
//! right tool at desk-scale bounds; an independent double-loop oracle guards
//! it in the test suite. Primes 2 and 3 are declared bad unconditionally for
//! short Weierstrass models.

use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::primes::{is_prime, mod_pow, mul_mod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Short Weierstrass curve `y^2 = x^3 + a4 x + a6` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub a4: BigInt,
    pub a6: BigInt,
    /// Discriminant of the CM order, when the curve is a catalog CM model.
    pub cm_discriminant: Option<i64>,
}

impl CurveModel {
    pub fn new(a4: BigInt, a6: BigInt) -> Result<Self> {
        let c = CurveModel {
            a4,
            a6,
            cm_discriminant: None,
        };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    fn with_cm(a4: i64, a6: i64, cm: i64) -> Self {
        CurveModel {
            a4: BigInt::from(a4),
            a6: BigInt::from(a6),
            cm_discriminant: Some(cm),
        }
    }

    /// `-16 (4 a4^3 + 27 a6^2)`.
    pub fn discriminant(&self) -> BigInt {
        let a4c = &self.a4 * &self.a4 * &self.a4;
        let a6s = &self.a6 * &self.a6;
        BigInt::from(-16) * (BigInt::from(4) * a4c + BigInt::from(27) * a6s)
    }

    /// The `a4,a6` text grammar.
    pub fn grammar_string(&self) -> String {
        format!("{},{}", self.a4, self.a6)
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a4, self.a6)
    }
}

/// Point count and Frobenius trace at a good prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApRecord {
    pub p: u64,
    /// `#E(F_p)`, including the point at infinity.
    pub count: u64,
    /// `a_p = p + 1 - count`; `|a_p| <= 2 sqrt(p)`.
    pub ap: i64,
}

/// Good reduction: `p > 3` and `p` does not divide the discriminant.
pub fn good_reduction(curve: &CurveModel, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= 3 {
        return Ok(false);
    }
    let disc = curve.discriminant();
    Ok(!disc.mod_floor(&BigInt::from(p)).is_zero())
}

/// Counts `#E(F_p)` by enumeration with Legendre symbols and asserts the
/// Hasse bound.
pub fn count_points(curve: &CurveModel, p: u64) -> Result<ApRecord> {
    if !good_reduction(curve, p)? {
        return Err(Error::BadReduction(p));
    }
    let a4 = reduce_mod(&curve.a4, p);
    let a6 = reduce_mod(&curve.a6, p);
    // count = 1 + sum_x (1 + legendre(f(x))) = p + 1 + sum_x legendre(f(x))
    let mut legendre_sum: i64 = 0;
    for x in 0..p {
        let fx = f_at(x, a4, a6, p);
        legendre_sum += legendre(fx, p) as i64;
    }
    let count = (p as i64 + 1 + legendre_sum) as u64;
    let ap = -legendre_sum;
    // Hasse: a_p^2 <= 4p, asserted unconditionally.
    assert!(
        (ap as i128) * (ap as i128) <= 4 * p as i128,
        "Hasse bound violated at p = {p}"
    );
    Ok(ApRecord { p, count, ap })
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    u64::try_from(&m).expect("reduced residue fits u64")
}

fn f_at(x: u64, a4: u64, a6: u64, p: u64) -> u64 {
    let x2 = mul_mod(x, x, p);
    let x3 = mul_mod(x2, x, p);
    let t = (x3 + mul_mod(a4, x, p)) % p;
    (t + a6) % p
}

/// Legendre symbol by Euler's criterion with fast modular exponentiation.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = mod_pow(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Local factor denominator `1 - a_p z + p z^2`.
pub fn curve_local_factor(curve: &CurveModel, p: u64) -> Result<IntPoly> {
    let rec = count_points(curve, p)?;
    Ok(IntPoly::new(vec![
        BigInt::from(1),
        BigInt::from(-rec.ap),
        BigInt::from(p),
    ]))
}

/// Built-in CM models: `y^2 = x^3 - x` (CM by Z[i], discriminant -4) and
/// `y^2 = x^3 + 1` (CM by Z[zeta_3], discriminant -3). Extra models from
/// configuration are appended unchanged.
pub fn cm_catalog() -> Vec<CurveModel> {
    vec![
        CurveModel::with_cm(-1, 0, -4),
        CurveModel::with_cm(0, 1, -3),
    ]
}

pub fn cm_catalog_with(extra: &[CurveModel]) -> Vec<CurveModel> {
    let mut out = cm_catalog();
    out.extend(extra.iter().cloned());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to;

    fn lemniscatic() -> CurveModel {
        CurveModel::new(BigInt::from(-1), BigInt::from(0)).unwrap()
    }

    /// Independent oracle: double loop over (x, y), no Legendre symbols.
    fn count_points_oracle(curve: &CurveModel, p: u64) -> u64 {
        let a4 = reduce_mod(&curve.a4, p);
        let a6 = reduce_mod(&curve.a6, p);
        let mut count = 1; // point at infinity
        for x in 0..p {
            let fx = f_at(x, a4, a6, p);
            for y in 0..p {
                if mul_mod(y, y, p) == fx {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn reduction_predicate() {
        let e = lemniscatic(); // disc = 64
        assert!(good_reduction(&e, 5).unwrap());
        assert!(!good_reduction(&e, 2).unwrap());
        let cubic = CurveModel::new(BigInt::from(0), BigInt::from(1)).unwrap(); // disc = -432
        assert!(!good_reduction(&cubic, 3).unwrap());
        assert!(matches!(good_reduction(&e, 6), Err(Error::NotPrime(6))));
    }

    #[test]
    fn singular_curve_rejected() {
        assert!(matches!(
            CurveModel::new(BigInt::from(0), BigInt::from(0)),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn counts_at_small_primes() {
        let e = lemniscatic();
        let r5 = count_points(&e, 5).unwrap();
        assert_eq!(r5.count, 8);
        assert_eq!(r5.ap, -2);
        let r7 = count_points(&e, 7).unwrap();
        assert_eq!(r7.ap, 0); // supersingular: 7 ≡ 3 mod 4
        // p = 13 frozen from the enumeration oracle
        let r13 = count_points(&e, 13).unwrap();
        assert_eq!(r13.count as i64, 13 + 1 - r13.ap);
        assert_eq!(r13.ap, 6);
        assert!(matches!(count_points(&e, 2), Err(Error::BadReduction(2))));
    }

    #[test]
    fn oracle_agreement_to_61() {
        let e = lemniscatic();
        let cubic = CurveModel::new(BigInt::from(0), BigInt::from(1)).unwrap();
        for p in primes_up_to(61) {
            for curve in [&e, &cubic] {
                if !good_reduction(curve, p).unwrap() {
                    continue;
                }
                let fast = count_points(curve, p).unwrap();
                let slow = count_points_oracle(curve, p);
                assert_eq!(fast.count, slow, "count mismatch at p = {p}");
            }
        }
    }

    #[test]
    fn supersingular_pattern_mod_4() {
        let e = lemniscatic();
        for p in primes_up_to(200) {
            if p % 4 != 3 || !good_reduction(&e, p).unwrap() {
                continue;
            }
            assert_eq!(count_points(&e, p).unwrap().ap, 0, "a_p != 0 at p = {p}");
        }
    }

    #[test]
    fn local_factor_at_one_counts_points() {
        let e = lemniscatic();
        for p in [5u64, 13, 17, 29] {
            let rec = count_points(&e, p).unwrap();
            let denom = curve_local_factor(&e, p).unwrap();
            // denominator(1) = 1 - a_p + p = #E(F_p)
            assert_eq!(denom.eval_bigint(&BigInt::from(1)), BigInt::from(rec.count));
        }
        // supersingular local factor is 1 + p z^2
        let f7 = curve_local_factor(&e, 7).unwrap();
        assert_eq!(f7.coeffs(), &[BigInt::from(1), BigInt::from(0), BigInt::from(7)]);
    }

    #[test]
    fn catalog_models() {
        let cat = cm_catalog();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].cm_discriminant, Some(-4));
        assert_eq!(cat[1].cm_discriminant, Some(-3));
        for c in &cat {
            assert!(!c.discriminant().is_zero());
        }
        let extra = CurveModel::new(BigInt::from(-4), BigInt::from(4)).unwrap();
        assert_eq!(cm_catalog_with(&[extra]).len(), 3);
    }

    #[test]
    fn legendre_small_table() {
        // residues mod 5 are {1, 4}
        assert_eq!(legendre(1, 5), 1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(3, 5), -1);
        assert_eq!(legendre(0, 5), 0);
    }
}
