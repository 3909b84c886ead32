//! Perron–Frobenius eigendata.
//!
//! For positive 2x2 integer matrices the dominant eigenpair lives in a real
//! quadratic field and is returned exactly. Higher dimensions get certified
//! enclosures: power iteration in dyadic arithmetic with Collatz–Wielandt
//! bounds, which are exact rational quotients and therefore rigorous for any
//! positive test vector.

use super::matrix::{IntMatrix, Matrix};
use crate::error::{Error, Result};
use crate::exact::{extract_square_part, QuadInt};
use crate::real::{Ball, BigFloat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Dominant eigendata of a positive integer matrix.
#[derive(Clone, Debug)]
pub enum PFData {
    /// Exact quadratic eigenpair; `matrix * vector = lambda * vector` holds
    /// exactly and is verified on construction.
    Exact {
        lambda: QuadInt,
        vector: Vec<QuadInt>,
    },
    /// Certified enclosure: the true Perron root lies inside `lambda`;
    /// the eigenvector is normalized to first coordinate 1.
    Enclosure {
        lambda: Ball,
        vector: Vec<Ball>,
        precision: u32,
    },
}

/// Requested computation mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfMode {
    Exact,
    Enclosure { precision: u32 },
}

pub fn perron_frobenius(a: &IntMatrix, mode: PfMode) -> Result<PFData> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.entries().iter().any(|e| !e.is_positive()) {
        return Err(Error::NonPositiveEntry);
    }
    match mode {
        PfMode::Exact => {
            if a.rows() != 2 {
                return Err(Error::NonQuadraticEigenvalue);
            }
            exact_2x2(a)
        }
        PfMode::Enclosure { precision } => enclosure(a, precision),
    }
}

fn exact_2x2(a: &IntMatrix) -> Result<PFData> {
    let t = a.trace()?;
    let det = a.det()?;
    let disc = &t * &t - (&det << 2u32);
    // disc = (a11 - a22)^2 + 4 a12 a21 > 0 for positive entries.
    debug_assert!(disc.is_positive());
    let (f, d0) = extract_square_part(&disc);
    let lambda = if d0.is_one() {
        // Rational dominant root (t + f)/2; the parity always works out
        // because t^2 - f^2 = 4 det.
        QuadInt::new(&t + &f, BigInt::zero(), BigInt::from(2), BigInt::from(2))?
    } else {
        QuadInt::new(t.clone(), f, BigInt::from(2), d0)?
    };
    // First row: a11 + a12 theta = lambda  =>  theta = (lambda - a11)/a12.
    let a11 = QuadInt::from_bigint(a.at(0, 0).clone());
    let a12 = QuadInt::from_bigint(a.at(0, 1).clone());
    let theta = lambda.checked_sub(&a11)?.checked_div(&a12)?;
    let vector = vec![QuadInt::one(), theta];
    verify_exact(a, &lambda, &vector)?;
    Ok(PFData::Exact { lambda, vector })
}

fn verify_exact(a: &IntMatrix, lambda: &QuadInt, v: &[QuadInt]) -> Result<()> {
    let aq = a.to_quad();
    let av = aq.matvec(v)?;
    for (avi, vi) in av.iter().zip(v) {
        let rhs = lambda.checked_mul(vi)?;
        if *avi != rhs {
            return Err(Error::InvalidArgument(
                "eigenpair verification failed".into(),
            ));
        }
    }
    Ok(())
}

/// Collatz–Wielandt enclosure at the target precision, doubling the working
/// precision from 256 bits up to 4096 before giving up.
fn enclosure(a: &IntMatrix, precision: u32) -> Result<PFData> {
    let mut work: u32 = 256.max(precision);
    loop {
        match try_enclosure(a, precision, work) {
            Some(result) => return Ok(result),
            None => {
                if work >= 4096 {
                    return Err(Error::PrecisionExhausted(
                        "Perron-Frobenius enclosure did not converge at 4096 bits",
                    ));
                }
                work = (work * 2).min(4096);
            }
        }
    }
}

fn try_enclosure(a: &IntMatrix, precision: u32, work: u32) -> Option<PFData> {
    let n = a.rows();
    let mut v: Vec<BigFloat> = vec![BigFloat::one(); n];
    let target = BigFloat::power_of_two(-(precision as i64));
    let max_iters = 64 + 8 * work as usize;
    let mut prev: Option<Vec<BigFloat>> = None;
    for _ in 0..max_iters {
        // w = A v, exactly (dyadic times integer).
        let w = mat_vec_dyadic(a, &v);
        // Collatz-Wielandt: min_i w_i/v_i <= lambda <= max_i w_i/v_i.
        let (lo, hi) = quotient_bounds(&w, &v)?;
        let width = hi.clone() - lo.clone();
        let rel_ok = {
            let bound = &lo * BigRational::new(
                target.to_ratio().0.clone(),
                target.to_ratio().1.clone(),
            );
            width <= bound
        };
        // Normalize to first coordinate 1 and round to the working precision;
        // rounding only perturbs the test vector, never the bound's rigor.
        let mut next: Vec<BigFloat> = w
            .iter()
            .map(|wi| wi.div_r(&w[0], work))
            .collect();
        next[0] = BigFloat::one();
        if next.iter().any(|x| !x.is_positive()) {
            return None; // precision too low to keep the vector positive
        }
        if rel_ok {
            // Vector stability: compare with the previous iterate.
            if let Some(p) = &prev {
                let delta = p
                    .iter()
                    .zip(&next)
                    .map(|(x, y)| x.sub(y).abs())
                    .fold(BigFloat::zero(), |acc, d| {
                        if d.cmp_value(&acc) == Ordering::Greater {
                            d
                        } else {
                            acc
                        }
                    });
                let lo_f = ratio_to_bigfloat(&lo, work);
                let hi_f = ratio_to_bigfloat(&hi, work);
                let mid = lo_f.add(&hi_f).shift(-1).round_to(work);
                let rad = hi_f.sub(&lo_f).shift(-1).abs().add(&mid.ulp_at(work)).round_up_coarse();
                let lambda = Ball::new(mid, rad.clone());
                let vector = next
                    .iter()
                    .map(|x| {
                        let vr = delta.add(&rad.mul(&x.abs())).round_up_coarse();
                        Ball::new(x.clone(), vr)
                    })
                    .collect();
                return Some(PFData::Enclosure {
                    lambda,
                    vector,
                    precision,
                });
            }
        }
        prev = Some(next.clone());
        v = next;
    }
    None
}

fn mat_vec_dyadic(a: &IntMatrix, v: &[BigFloat]) -> Vec<BigFloat> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            let mut acc = BigFloat::zero();
            for j in 0..n {
                acc = acc.add(&BigFloat::from_bigint(a.at(i, j)).mul(&v[j]));
            }
            acc
        })
        .collect()
}

/// Exact rational Collatz–Wielandt bounds from a positive dyadic vector.
fn quotient_bounds(w: &[BigFloat], v: &[BigFloat]) -> Option<(BigRational, BigRational)> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for (wi, vi) in w.iter().zip(v) {
        if !vi.is_positive() {
            return None;
        }
        let (wn, wd) = wi.to_ratio();
        let (vn, vd) = vi.to_ratio();
        let q = BigRational::new(wn * vd, wd * vn);
        lo = Some(match lo {
            None => q.clone(),
            Some(l) => l.min(q.clone()),
        });
        hi = Some(match hi {
            None => q,
            Some(h) => h.max(q),
        });
    }
    Some((lo?, hi?))
}

fn ratio_to_bigfloat(r: &BigRational, prec: u32) -> BigFloat {
    BigFloat::from_ratio(r.numer(), r.denom(), prec)
}

/// Endomorphism normalization: `(a, 1; c, d)` is conjugate to
/// `(a+d, 1; c-ad, 0)` by `S = (1, 0; d, 1)`, with `S^-1 m S` the fixed
/// direction. Returns `(normalized, S)` after verifying the identity.
pub fn normalize_endomorphism(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongShape("expected a 2x2 matrix"));
    }
    if !m.at(0, 1).is_one() {
        return Err(Error::TopRightNotOne);
    }
    if m.det()?.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let a = m.at(0, 0).clone();
    let c = m.at(1, 0).clone();
    let d = m.at(1, 1).clone();
    let normalized = Matrix::from_rows(vec![
        vec![&a + &d, BigInt::one()],
        vec![&c - &a * &d, BigInt::zero()],
    ]);
    let s = Matrix::from_rows(vec![
        vec![BigInt::one(), BigInt::zero()],
        vec![d.clone(), BigInt::one()],
    ]);
    let s_inv = Matrix::from_rows(vec![
        vec![BigInt::one(), BigInt::zero()],
        vec![-&d, BigInt::one()],
    ]);
    let conj = s_inv.matmul(m)?.matmul(&s)?;
    debug_assert_eq!(conj, normalized, "conjugation identity");
    Ok((normalized, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadInt {
        QuadInt::new(a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    #[test]
    fn exact_sqrt2_matrix() {
        let a = m(&[&[1, 1], &[2, 1]]);
        match perron_frobenius(&a, PfMode::Exact).unwrap() {
            PFData::Exact { lambda, vector } => {
                assert_eq!(lambda, q(1, 1, 1, 2)); // 1 + sqrt2
                assert_eq!(vector[1], q(0, 1, 1, 2)); // sqrt2
            }
            _ => panic!("expected exact data"),
        }
    }

    #[test]
    fn exact_golden_like() {
        let a = m(&[&[2, 1], &[1, 1]]);
        match perron_frobenius(&a, PfMode::Exact).unwrap() {
            PFData::Exact { lambda, vector } => {
                assert_eq!(lambda, q(3, 1, 2, 5)); // (3+sqrt5)/2
                assert_eq!(vector[1], q(-1, 1, 2, 5)); // (sqrt5-1)/2
            }
            _ => panic!("expected exact data"),
        }
    }

    #[test]
    fn exact_rational_eigenvalue() {
        let a = m(&[&[1, 1], &[1, 1]]);
        match perron_frobenius(&a, PfMode::Exact).unwrap() {
            PFData::Exact { lambda, vector } => {
                assert_eq!(lambda, QuadInt::from_i64(2));
                assert_eq!(vector[1], QuadInt::one());
            }
            _ => panic!("expected exact data"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let nonpos = m(&[&[1, 0], &[1, 1]]);
        assert!(matches!(
            perron_frobenius(&nonpos, PfMode::Exact),
            Err(Error::NonPositiveEntry)
        ));
        let three = m(&[&[1, 1, 1], &[1, 2, 1], &[1, 1, 3]]);
        assert!(matches!(
            perron_frobenius(&three, PfMode::Exact),
            Err(Error::NonQuadraticEigenvalue)
        ));
    }

    #[test]
    fn enclosure_contains_true_root() {
        let a = m(&[&[1, 1, 1], &[1, 2, 1], &[1, 1, 3]]);
        let data = perron_frobenius(&a, PfMode::Enclosure { precision: 128 }).unwrap();
        match data {
            PFData::Enclosure { lambda, vector, .. } => {
                // Independent check: the characteristic polynomial changes sign
                // across the enclosure.
                let cp = a.char_poly().unwrap();
                let lo = lambda.mid().sub(lambda.rad());
                let hi = lambda.mid().add(lambda.rad());
                let (ln, ld) = lo.to_ratio();
                let (hn, hd) = hi.to_ratio();
                let f_lo = cp.eval_rational(&BigRational::new(ln, ld));
                let f_hi = cp.eval_rational(&BigRational::new(hn, hd));
                assert!(f_lo.is_negative() != f_hi.is_negative());
                assert_eq!(vector[0].mid().cmp_value(&BigFloat::one()), Ordering::Equal);
            }
            _ => panic!("expected enclosure"),
        }
    }

    #[test]
    fn endomorphism_normalization() {
        let (n, s) = normalize_endomorphism(&m(&[&[2, 1], &[3, 4]])).unwrap();
        assert_eq!(n, m(&[&[6, 1], &[-5, 0]]));
        assert_eq!(s, m(&[&[1, 0], &[4, 1]]));
        // already in normal form
        let (n2, s2) = normalize_endomorphism(&m(&[&[1, 1], &[1, 0]])).unwrap();
        assert_eq!(n2, m(&[&[1, 1], &[1, 0]]));
        assert!(s2.is_identity());
        let (n3, _) = normalize_endomorphism(&m(&[&[0, 1], &[5, 0]])).unwrap();
        assert_eq!(n3, m(&[&[0, 1], &[5, 0]]));
        // errors
        assert!(matches!(
            normalize_endomorphism(&m(&[&[2, 3], &[3, 4]])),
            Err(Error::TopRightNotOne)
        ));
        assert!(matches!(
            normalize_endomorphism(&m(&[&[1, 1], &[2, 2]])),
            Err(Error::ZeroDeterminant)
        ));
    }
}
