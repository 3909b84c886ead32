//! Smith normal form over a Euclidean ring, with unimodular transforms.
//!
//! One elimination routine serves both Z (integer matrices) and Q[x]
//! (characteristic matrices for the similarity criterion). Pivoting is
//! deterministic: the smallest nonzero entry by the ring's size measure,
//! scanning rows then columns, so outputs are reproducible byte for byte.

use super::matrix::{Matrix, Ring};
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

/// Euclidean structure needed by the elimination.
pub trait SmithRing: Ring {
    /// Strictly monotone size: `size(r) < size(b)` for the remainder of a
    /// division by `b`.
    type Size: Ord;
    fn size(x: &Self) -> Self::Size;
    fn div_rem(a: &Self, b: &Self) -> (Self, Self);
    /// `(canonical, u)` with `canonical = x * u` and `u` a unit
    /// (sign for Z, inverse leading coefficient for Q[x]).
    fn canonical_form(x: &Self) -> (Self, Self);
    /// Exact divisibility test.
    fn divides(a: &Self, b: &Self) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        Self::div_rem(b, a).1.is_zero()
    }
}

impl SmithRing for BigInt {
    type Size = BigUint;
    fn size(x: &Self) -> BigUint {
        x.magnitude().clone()
    }
    fn div_rem(a: &Self, b: &Self) -> (Self, Self) {
        Integer::div_rem(a, b)
    }
    fn canonical_form(x: &Self) -> (Self, Self) {
        if x.is_negative() {
            (-x, BigInt::from(-1))
        } else {
            (x.clone(), BigInt::from(1))
        }
    }
}

impl Ring for RatPoly {
    fn zero() -> Self {
        RatPoly::zero()
    }
    fn one() -> Self {
        RatPoly::one()
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatPoly::neg(self)
    }
}

impl SmithRing for RatPoly {
    type Size = u64;
    fn size(x: &Self) -> u64 {
        x.degree().map(|d| d as u64).unwrap_or(0)
    }
    fn div_rem(a: &Self, b: &Self) -> (Self, Self) {
        RatPoly::div_rem(a, b)
    }
    fn canonical_form(x: &Self) -> (Self, Self) {
        let (monic, lead) = x.monic();
        (monic, RatPoly::constant(BigRational::from(BigInt::from(1)) / lead))
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: SmithRing> SnfResult<T> {
    /// Diagonal of `S` up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.at(i, i).clone()).collect()
    }
}

pub fn smith_normal_form<T: SmithRing>(m: &Matrix<T>) -> SnfResult<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = Matrix::<T>::identity(rows);
    let mut v = Matrix::<T>::identity(cols);
    let steps = rows.min(cols);

    let mut t = 0;
    while t < steps {
        if !place_pivot(&mut a, &mut u, &mut v, t) {
            break; // remaining block is zero
        }
        eliminate_at(&mut a, &mut u, &mut v, t);
        // The pivot must divide every entry of the trailing block; if not,
        // fold the offending row in and redo the elimination.
        if let Some((i, _)) = find_nondivisible(&a, t) {
            add_row(&mut a, &mut u, t, i);
            continue; // re-run at the same t
        }
        t += 1;
    }

    // Canonical units on the diagonal (nonnegative for Z, monic for Q[x]).
    for i in 0..steps {
        let d = a.at(i, i).clone();
        if d.is_zero() {
            continue;
        }
        let (canon, unit) = T::canonical_form(&d);
        if canon != d {
            scale_row(&mut a, &mut u, i, &unit);
        }
    }

    // Enforce the divisibility chain d_i | d_{i+1}.
    loop {
        let mut fixed = true;
        for i in 0..steps.saturating_sub(1) {
            let di = a.at(i, i).clone();
            let dj = a.at(i + 1, i + 1).clone();
            if dj.is_zero() {
                continue;
            }
            if di.is_zero() || !T::divides(&di, &dj) {
                // Fold column i+1 into column i and re-eliminate from i.
                add_col(&mut a, &mut v, i + 1, i);
                let mut t2 = i;
                while t2 < steps {
                    if !place_pivot(&mut a, &mut u, &mut v, t2) {
                        break;
                    }
                    eliminate_at(&mut a, &mut u, &mut v, t2);
                    if let Some((r, _)) = find_nondivisible(&a, t2) {
                        add_row(&mut a, &mut u, t2, r);
                        continue;
                    }
                    t2 += 1;
                }
                for k in 0..steps {
                    let d = a.at(k, k).clone();
                    if d.is_zero() {
                        continue;
                    }
                    let (canon, unit) = T::canonical_form(&d);
                    if canon != d {
                        scale_row(&mut a, &mut u, k, &unit);
                    }
                }
                fixed = false;
                break;
            }
        }
        if fixed {
            break;
        }
    }

    SnfResult { u, s: a, v }
}

/// Moves the smallest nonzero entry of the trailing block to `(t, t)`;
/// returns false when the block is all zero.
fn place_pivot<T: SmithRing>(
    a: &mut Matrix<T>,
    u: &mut Matrix<T>,
    v: &mut Matrix<T>,
    t: usize,
) -> bool {
    let mut best: Option<(T::Size, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.at(i, j);
            if x.is_zero() {
                continue;
            }
            let s = T::size(x);
            match &best {
                Some((bs, _, _)) if *bs <= s => {}
                _ => best = Some((s, i, j)),
            }
        }
    }
    match best {
        None => false,
        Some((_, i, j)) => {
            if i != t {
                a.swap_rows(t, i);
                u.swap_rows(t, i);
            }
            if j != t {
                a.swap_cols(t, j);
                v.swap_cols(t, j);
            }
            true
        }
    }
}

/// Clears row and column `t` (except the pivot) by Euclidean steps.
fn eliminate_at<T: SmithRing>(a: &mut Matrix<T>, u: &mut Matrix<T>, v: &mut Matrix<T>, t: usize) {
    loop {
        let mut progressed = false;
        // Column t below/above the pivot.
        for i in 0..a.rows() {
            if i == t || a.at(i, t).is_zero() {
                continue;
            }
            let (q, r) = T::div_rem(a.at(i, t), a.at(t, t));
            sub_scaled_row(a, u, i, t, &q);
            if !r.is_zero() {
                // Remainder is strictly smaller: swap it into the pivot.
                a.swap_rows(t, i);
                u.swap_rows(t, i);
            }
            progressed = true;
        }
        // Row t.
        for j in 0..a.cols() {
            if j == t || a.at(t, j).is_zero() {
                continue;
            }
            let (q, r) = T::div_rem(a.at(t, j), a.at(t, t));
            sub_scaled_col(a, v, j, t, &q);
            if !r.is_zero() {
                a.swap_cols(t, j);
                v.swap_cols(t, j);
            }
            progressed = true;
        }
        if !progressed {
            break;
        }
        // Check whether both the row and column are clear.
        let row_clear = (0..a.cols()).all(|j| j == t || a.at(t, j).is_zero());
        let col_clear = (0..a.rows()).all(|i| i == t || a.at(i, t).is_zero());
        if row_clear && col_clear {
            break;
        }
    }
}

fn find_nondivisible<T: SmithRing>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let p = a.at(t, t);
    for i in (t + 1)..a.rows() {
        for j in (t + 1)..a.cols() {
            if !a.at(i, j).is_zero() && !T::divides(p, a.at(i, j)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// row_dst += row_src (tracked in U).
fn add_row<T: SmithRing>(a: &mut Matrix<T>, u: &mut Matrix<T>, dst: usize, src: usize) {
    for j in 0..a.cols() {
        let v = a.at(dst, j).add(a.at(src, j));
        a.set(dst, j, v);
    }
    for j in 0..u.cols() {
        let v = u.at(dst, j).add(u.at(src, j));
        u.set(dst, j, v);
    }
}

/// col_dst += col_src (tracked in V).
fn add_col<T: SmithRing>(a: &mut Matrix<T>, v: &mut Matrix<T>, src: usize, dst: usize) {
    for i in 0..a.rows() {
        let val = a.at(i, dst).add(a.at(i, src));
        a.set(i, dst, val);
    }
    for i in 0..v.rows() {
        let val = v.at(i, dst).add(v.at(i, src));
        v.set(i, dst, val);
    }
}

/// row_i -= q * row_t (tracked in U).
fn sub_scaled_row<T: SmithRing>(
    a: &mut Matrix<T>,
    u: &mut Matrix<T>,
    i: usize,
    t: usize,
    q: &T,
) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        let v = a.at(i, j).sub(&q.mul(a.at(t, j)));
        a.set(i, j, v);
    }
    for j in 0..u.cols() {
        let v = u.at(i, j).sub(&q.mul(u.at(t, j)));
        u.set(i, j, v);
    }
}

/// col_j -= q * col_t (tracked in V).
fn sub_scaled_col<T: SmithRing>(
    a: &mut Matrix<T>,
    v: &mut Matrix<T>,
    j: usize,
    t: usize,
    q: &T,
) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let val = a.at(i, j).sub(&q.mul(a.at(i, t)));
        a.set(i, j, val);
    }
    for i in 0..v.rows() {
        let val = v.at(i, j).sub(&q.mul(v.at(i, t)));
        v.set(i, j, val);
    }
}

fn scale_row<T: SmithRing>(a: &mut Matrix<T>, u: &mut Matrix<T>, i: usize, unit: &T) {
    for j in 0..a.cols() {
        let v = a.at(i, j).mul(unit);
        a.set(i, j, v);
    }
    for j in 0..u.cols() {
        let v = u.at(i, j).mul(unit);
        u.set(i, j, v);
    }
}

/// Rational similarity via the invariant-factor criterion: `A ~ B` over Q
/// iff `xI - A` and `xI - B` have the same Smith normal form over Q[x].
pub fn similar_via_char_matrix(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() || !b.is_square() {
        return Err(Error::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let ca = char_matrix(a);
    let cb = char_matrix(b);
    let sa = smith_normal_form(&ca);
    let sb = smith_normal_form(&cb);
    Ok(sa.diagonal() == sb.diagonal())
}

/// `xI - M` over Q[x].
pub fn char_matrix(m: &Matrix<BigInt>) -> Matrix<RatPoly> {
    let n = m.rows();
    let mut out = Matrix::<RatPoly>::zero(n, m.cols());
    for i in 0..n {
        for j in 0..m.cols() {
            let c = RatPoly::from_bigint(m.at(i, j)).neg();
            let e = if i == j { RatPoly::x().add(&c) } else { c };
            out.set(i, j, e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::IntMatrix;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_snf(mat: &IntMatrix) {
        let r = smith_normal_form(mat);
        let prod = r.u.matmul(mat).unwrap().matmul(&r.v).unwrap();
        assert_eq!(prod, r.s, "U M V = S");
        assert!(r.u.is_unimodular().unwrap(), "U unimodular");
        assert!(r.v.is_unimodular().unwrap(), "V unimodular");
        let d = r.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() && !d[i + 1].is_zero() {
                assert!(
                    !d[i].is_zero() && (&d[i + 1] % &d[i]).is_zero(),
                    "divisibility chain"
                );
            }
        }
        // off-diagonal zero
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_case() {
        let i3 = IntMatrix::identity(3);
        let r = smith_normal_form(&i3);
        assert_eq!(r.s, i3);
        check_snf(&i3);
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let d = m(&[&[2, 0], &[0, 3]]);
        let r = smith_normal_form(&d);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&d);
    }

    #[test]
    fn spec_example_2_4() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&a);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        check_snf(&m(&[&[1, 2], &[2, 4]]));
        check_snf(&m(&[&[0, 0], &[0, 0]]));
        check_snf(&m(&[&[3, 6, 9], &[12, 15, 18]]));
        check_snf(&m(&[&[2], &[4], &[6]]));
    }

    #[test]
    fn similarity_to_transpose_lemma() {
        // (a+d, 1; c-ad, 0) is similar to its transpose.
        let a = m(&[&[6, 1], &[-5, 0]]);
        assert!(similar_via_char_matrix(&a, &a.transpose()).unwrap());
        // every matrix is similar to itself
        assert!(similar_via_char_matrix(&a, &a).unwrap());
    }

    #[test]
    fn distinct_invariant_factors_detected() {
        let i2 = IntMatrix::identity(2);
        let shear = m(&[&[1, 1], &[0, 1]]);
        // invariant factors (x-1, x-1) vs (1, (x-1)^2)
        assert!(!similar_via_char_matrix(&i2, &shear).unwrap());
    }

    #[test]
    fn polynomial_snf_shape() {
        let a = m(&[&[6, 1], &[-5, 0]]);
        let s = smith_normal_form(&char_matrix(&a));
        let d = s.diagonal();
        assert_eq!(d[0], RatPoly::one());
        // second invariant factor is the characteristic polynomial (monic)
        let cp = RatPoly::from_int_poly(&a.char_poly().unwrap());
        assert_eq!(d[1], cp);
    }
}
