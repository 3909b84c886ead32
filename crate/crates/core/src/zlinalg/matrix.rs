//! Dense matrices over exact rings.

use crate::error::{Error, Result};
use crate::exact::{IntPoly, QuadInt};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Minimal ring interface used by the generic matrix routines.
///
/// `QuadInt` implements it with panicking mixed-field arithmetic; the matrix
/// code only ever combines entries of one field.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Rings with exact division by nonzero elements.
pub trait Field: Ring {
    fn div(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Ring for QuadInt {
    fn zero() -> Self {
        QuadInt::zero()
    }
    fn one() -> Self {
        QuadInt::one()
    }
    fn is_zero(&self) -> bool {
        QuadInt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrix entries share one field")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("matrix entries share one field")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix entries share one field")
    }
    fn neg(&self) -> Self {
        QuadInt::neg(self)
    }
}

impl Field for QuadInt {
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("division in one field")
    }
}

// Dyadic floats form a ring under the exact operations (no rounding), which
// makes Matrix<BigFloat> products and residuals exact.
impl Ring for crate::real::BigFloat {
    fn zero() -> Self {
        crate::real::BigFloat::zero()
    }
    fn one() -> Self {
        crate::real::BigFloat::one()
    }
    fn is_zero(&self) -> bool {
        crate::real::BigFloat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        crate::real::BigFloat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        crate::real::BigFloat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        crate::real::BigFloat::mul(self, other)
    }
    fn neg(&self) -> Self {
        crate::real::BigFloat::neg(self)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        assert_eq!(rows * cols, data.len(), "entry count mismatch");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        assert!(r >= 1);
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(self.rows, self.cols, v.len(), 1));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = T::zero();
            for j in 0..self.cols {
                acc = acc.add(&self.at(i, j).mul(&v[j]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Binary powering; `pow(0)` is the identity.
    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = Self::identity(self.rows);
        let mut acc = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                result = result.matmul(&acc)?;
            }
            n >>= 1;
            if n > 0 {
                acc = acc.matmul(&acc)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.at(i, j) == T::one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss–Jordan inverse; `Err(Singular)` when no inverse exists.
    /// Pivots are chosen as the first nonzero entry in column order, which is
    /// deterministic and exact over a field.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            let p = a.at(col, col).clone();
            for j in 0..n {
                let v = a.at(col, j).div(&p);
                a.set(col, j, v);
                let w = inv.at(col, j).div(&p);
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j).sub(&f.mul(a.at(col, j)));
                    a.set(r, j, v);
                    let w = inv.at(r, j).sub(&f.mul(inv.at(col, j)));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i32;
        let mut prev = BigInt::from(1u32);
        for k in 0..n.saturating_sub(1) {
            if Zero::is_zero(&a[idx(k, k)]) {
                let swap = ((k + 1)..n).find(|&r| !Zero::is_zero(&a[idx(r, k)]));
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(r, j));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::from(0u32)),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &num / &prev;
                }
            }
            for i in (k + 1)..n {
                a[idx(i, k)] = BigInt::from(0u32);
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.abs().is_one())
    }

    /// Characteristic polynomial `det(xI - M)`, monic, by the
    /// Faddeev–LeVerrier recurrence (all divisions exact over Z).
    pub fn char_poly(&self) -> Result<IntPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::from(0u32); n + 1];
        coeffs[n] = BigInt::from(1u32);
        let mut m = Matrix::<BigInt>::zero(n, n); // M_0 = 0
        let mut c = BigInt::from(1u32); // c_0 = 1
        for k in 1..=n {
            // M_k = A (M_{k-1} + c_{k-1} I)
            let mut shifted = m;
            for i in 0..n {
                let v = shifted.at(i, i).clone() + &c;
                shifted.set(i, i, v);
            }
            m = self.matmul(&shifted)?;
            let tr = m.trace()?;
            let k_big = BigInt::from(k as u64);
            let (q, r) = num_integer::Integer::div_rem(&(-tr), &k_big);
            debug_assert!(Zero::is_zero(&r), "Faddeev-LeVerrier division is exact");
            c = q;
            coeffs[n - k] = c.clone();
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Entries as QuadInt constants (for mixed exact arithmetic).
    pub fn to_quad(&self) -> Matrix<QuadInt> {
        self.map(|x| QuadInt::from_bigint(x.clone()))
    }

    /// The `rows ; cols ,` text grammar, e.g. `1,1;2,1`.
    pub fn grammar_string(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.grammar_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn multiplication_and_power() {
        let a = m(&[&[1, 1], &[2, 1]]);
        let a2 = a.pow(2).unwrap();
        assert_eq!(a2, m(&[&[3, 2], &[4, 3]]));
        let a3 = a.pow(3).unwrap();
        assert_eq!(a3, m(&[&[7, 5], &[10, 7]]));
        assert!(a.pow(0).unwrap().is_identity());
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[1, 1], &[2, 1]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[2, 4], &[6, 8]]).det().unwrap(), BigInt::from(-8));
        assert_eq!(
            m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det().unwrap(),
            BigInt::from(-2) // classic singular-pivot exercise
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), BigInt::from(0u32));
    }

    #[test]
    fn char_poly_examples() {
        // [[1,1],[2,1]] -> x^2 - 2x - 1
        let a = m(&[&[1, 1], &[2, 1]]);
        let p = a.char_poly().unwrap();
        assert_eq!(p.to_string(), "x^2 - 2x - 1");
        // identity 2x2 -> (x-1)^2 = x^2 - 2x + 1
        let i2 = IntMatrix::identity(2);
        assert_eq!(i2.char_poly().unwrap().to_string(), "x^2 - 2x + 1");
        // [[6,2],[-1,0]] -> x^2 - 6x + 2
        let l = m(&[&[6, 2], &[-1, 0]]);
        assert_eq!(l.char_poly().unwrap().to_string(), "x^2 - 6x + 2");
        // [[t,p],[-1,0]] at t=6,p=2 matches the 2x2 formula
    }

    #[test]
    fn char_poly_constant_term_is_det_up_to_sign() {
        let a = m(&[&[3, 1, 0], &[1, 4, 1], &[0, 1, 5]]);
        let p = a.char_poly().unwrap();
        let det = a.det().unwrap();
        // char(0) = det(-M) = (-1)^n det(M)
        assert_eq!(p.coeff(0), -det);
    }

    #[test]
    fn rational_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]).map(|x| BigRational::from(x.clone()));
        let inv = a.inverse().unwrap();
        assert!(a.matmul(&inv).unwrap().is_identity());
        let sing = m(&[&[1, 2], &[2, 4]]).map(|x| BigRational::from(x.clone()));
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn grammar_round_trip() {
        let a = m(&[&[1, 1], &[2, 1]]);
        assert_eq!(a.grammar_string(), "1,1;2,1");
    }
}
