//! The noncommutative-torus parameter model.
//!
//! A 2n-dimensional torus is parameterized by a skew-symmetric matrix Theta.
//! This module provides the split-orthogonal membership test behind the
//! stable-isomorphism group, its action `Theta' = (A Theta + B)(C Theta + D)^-1`,
//! the boundary Möbius action on a single parameter, the normal form with
//! positive block parameters, the trace lattice with its rank-2^n generator
//! set, real-multiplication detection, and the symplectic membership test
//! with the block embedding that realizes `Sp(2n) -> SO(2n, 2n)`.

mod normal;

pub use normal::{normal_form as normal_form_numeric, NormalFormData};

use crate::error::{Error, Result};
use crate::exact::QuadInt;
use crate::real::{Ball, BigFloat};
use crate::zlinalg::{IntMatrix, Matrix};
use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

// ---------------------------------------------------------------------------
// Quadratic form membership tests
// ---------------------------------------------------------------------------

/// True iff `g` preserves the split quadratic form
/// `x_1 x_{k+1} + ... + x_k x_{2k}`, i.e. `g^T F g = F` for the Gram matrix
/// `F = (0, I; I, 0)`. Equivalent to the block identities
/// `A^T D + C^T B = I`, `A^T C + C^T A = 0`, `B^T D + D^T B = 0`.
pub fn check_so_nn(g: &IntMatrix) -> Result<bool> {
    let f = split_form_gram(even_half(g)?);
    let prod = g.transpose().matmul(&f)?.matmul(g)?;
    Ok(prod == f)
}

/// True iff `g^T J g = J` for `J = (0, I; -I, 0)`.
pub fn is_symplectic(g: &IntMatrix) -> Result<bool> {
    let j = symplectic_gram(even_half(g)?);
    let prod = g.transpose().matmul(&j)?.matmul(g)?;
    Ok(prod == j)
}

fn even_half(g: &IntMatrix) -> Result<usize> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if g.rows() % 2 != 0 {
        return Err(Error::OddDimension(g.rows()));
    }
    Ok(g.rows() / 2)
}

fn split_form_gram(k: usize) -> IntMatrix {
    let mut f = Matrix::<BigInt>::zero(2 * k, 2 * k);
    for i in 0..k {
        f.set(i, k + i, BigInt::one());
        f.set(k + i, i, BigInt::one());
    }
    f
}

fn symplectic_gram(k: usize) -> IntMatrix {
    let mut j = Matrix::<BigInt>::zero(2 * k, 2 * k);
    for i in 0..k {
        j.set(i, k + i, BigInt::one());
        j.set(k + i, i, BigInt::from(-1));
    }
    j
}

// ---------------------------------------------------------------------------
// Split-orthogonal group elements and their action
// ---------------------------------------------------------------------------

/// Element of the split-orthogonal group, stored as k x k blocks
/// `(A, B; C, D)` satisfying `A^T D + C^T B = I`,
/// `A^T C + C^T A = 0 = B^T D + D^T B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsElement {
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub c: IntMatrix,
    pub d: IntMatrix,
}

impl RsElement {
    /// Validates the block identities on construction.
    pub fn from_blocks(a: IntMatrix, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Result<Self> {
        let k = a.rows();
        for m in [&a, &b, &c, &d] {
            if m.rows() != k || m.cols() != k {
                return Err(Error::DimensionMismatch(m.rows(), m.cols(), k, k));
            }
        }
        let e = RsElement { a, b, c, d };
        if !check_so_nn(&e.to_matrix())? {
            return Err(Error::WrongShape(
                "blocks do not satisfy the split-orthogonal identities",
            ));
        }
        Ok(e)
    }

    /// Splits a 2k x 2k matrix into blocks, validating the identities.
    pub fn from_matrix(g: &IntMatrix) -> Result<Self> {
        let k = even_half(g)?;
        let block = |r0: usize, c0: usize| {
            let mut m = Matrix::<BigInt>::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, g.at(r0 + i, c0 + j).clone());
                }
            }
            m
        };
        Self::from_blocks(block(0, 0), block(0, k), block(k, 0), block(k, k))
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let k = self.a.rows();
        let mut g = Matrix::<BigInt>::zero(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, self.a.at(i, j).clone());
                g.set(i, k + j, self.b.at(i, j).clone());
                g.set(k + i, j, self.c.at(i, j).clone());
                g.set(k + i, k + j, self.d.at(i, j).clone());
            }
        }
        g
    }

    pub fn identity(k: usize) -> Self {
        RsElement {
            a: IntMatrix::identity(k),
            b: Matrix::zero(k, k),
            c: Matrix::zero(k, k),
            d: IntMatrix::identity(k),
        }
    }
}

/// The scalar boundary embedding: an SL2 matrix `(a, b; c, d)` becomes the
/// 4x4 split-orthogonal element with blocks
/// `A = aI, B = (0, b; -b, 0), C = (0, -c; c, 0), D = dI`.
pub fn eq_boundary_element(a: i64, b: i64, c: i64, d: i64) -> Result<RsElement> {
    embed_sl_blocks(
        &IntMatrix::from_i64_rows(&[&[a]]),
        &IntMatrix::from_i64_rows(&[&[b]]),
        &IntMatrix::from_i64_rows(&[&[c]]),
        &IntMatrix::from_i64_rows(&[&[d]]),
    )
}

/// Embeds a symplectic `2n x 2n` matrix with blocks `(a, b; c, d)` into the
/// split-orthogonal group on `4n` coordinates:
/// `A = diag(a, a), B = (0, b; -b, 0), C = (0, -c; c, 0), D = diag(d, d)`.
/// The symplectic identities `a^T d - c^T b = I`, `a^T c`, `b^T d` symmetric
/// translate exactly into the split-orthogonal identities.
pub fn sp_to_so_embedding(g: &IntMatrix) -> Result<RsElement> {
    let n = even_half(g)?;
    let block = |r0: usize, c0: usize| {
        let mut m = Matrix::<BigInt>::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, g.at(r0 + i, c0 + j).clone());
            }
        }
        m
    };
    embed_sl_blocks(&block(0, 0), &block(0, n), &block(n, 0), &block(n, n))
}

fn embed_sl_blocks(
    a: &IntMatrix,
    b: &IntMatrix,
    c: &IntMatrix,
    d: &IntMatrix,
) -> Result<RsElement> {
    let n = a.rows();
    let two = |m: &IntMatrix, anti: bool| -> IntMatrix {
        // diag(m, m) or the twisted form (0, m; -m, 0)
        let mut out = Matrix::<BigInt>::zero(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if anti {
                    out.set(i, n + j, m.at(i, j).clone());
                    out.set(n + i, j, -m.at(i, j));
                } else {
                    out.set(i, j, m.at(i, j).clone());
                    out.set(n + i, n + j, m.at(i, j).clone());
                }
            }
        }
        out
    };
    RsElement::from_blocks(two(a, false), two(b, true), two(&c.neg(), true), two(d, false))
}

/// Skew-symmetric parameter matrix, exact or numeric.
#[derive(Clone, Debug)]
pub enum SkewMatrix {
    Exact(Matrix<QuadInt>),
    Numeric(Matrix<BigFloat>),
}

impl SkewMatrix {
    pub fn exact(m: Matrix<QuadInt>) -> Result<Self> {
        validate_skew(&m, |x: &QuadInt, y: &QuadInt| {
            x.checked_add(y).map(|s| s.is_zero()).unwrap_or(false)
        })?;
        Ok(SkewMatrix::Exact(m))
    }

    pub fn numeric(m: Matrix<BigFloat>) -> Result<Self> {
        validate_skew(&m, |x: &BigFloat, y: &BigFloat| x.add(y).is_zero())?;
        Ok(SkewMatrix::Numeric(m))
    }

    /// The 2x2 boundary parameter `(0, theta; -theta, 0)`.
    pub fn boundary(theta: &QuadInt) -> Self {
        let m = Matrix::from_rows(vec![
            vec![QuadInt::zero(), theta.clone()],
            vec![theta.neg(), QuadInt::zero()],
        ]);
        SkewMatrix::Exact(m)
    }

    pub fn dim(&self) -> usize {
        match self {
            SkewMatrix::Exact(m) => m.rows(),
            SkewMatrix::Numeric(m) => m.rows(),
        }
    }

    pub fn to_numeric(&self, prec: u32) -> Matrix<BigFloat> {
        match self {
            SkewMatrix::Numeric(m) => m.clone(),
            SkewMatrix::Exact(m) => m.map(|q| q.to_ball(prec).mid().clone()),
        }
    }
}

fn validate_skew<T: Clone, F: Fn(&T, &T) -> bool>(m: &Matrix<T>, sums_to_zero: F) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !sums_to_zero(m.at(i, j), m.at(j, i)) {
                return Err(Error::WrongShape("matrix is not skew-symmetric"));
            }
        }
    }
    Ok(())
}

/// `Theta' = (A Theta + B)(C Theta + D)^-1`. Exact inputs give an exactly
/// skew-symmetric exact result; numeric inputs are checked to be skew within
/// the certified radii.
pub fn apply_rs_action(g: &RsElement, theta: &SkewMatrix) -> Result<SkewMatrix> {
    let k = g.a.rows();
    if theta.dim() != k {
        return Err(Error::DimensionMismatch(theta.dim(), theta.dim(), k, k));
    }
    match theta {
        SkewMatrix::Exact(m) => {
            let aq = g.a.to_quad();
            let bq = g.b.to_quad();
            let cq = g.c.to_quad();
            let dq = g.d.to_quad();
            let num = aq.matmul(m)?.add(&bq)?;
            let den = cq.matmul(m)?.add(&dq)?;
            let den_inv = den.inverse().map_err(|_| Error::Singular)?;
            let out = num.matmul(&den_inv)?;
            SkewMatrix::exact(out)
        }
        SkewMatrix::Numeric(m) => {
            let prec = 128;
            let to_ball = |im: &IntMatrix| im.map(|x| Ball::from_bigint(x));
            let mb = m.map(|x| Ball::exact(x.clone()));
            let num = ball_mat_add(&ball_mat_mul(&to_ball(&g.a), &mb, prec)?, &to_ball(&g.b), prec)?;
            let den = ball_mat_add(&ball_mat_mul(&to_ball(&g.c), &mb, prec)?, &to_ball(&g.d), prec)?;
            let den_inv = ball_mat_inverse(&den, prec)?;
            let out = ball_mat_mul(&num, &den_inv, prec)?;
            // Certified skew check, then return midpoints.
            for i in 0..k {
                for j in 0..k {
                    let s = out.at(i, j).add(out.at(j, i), prec);
                    if s.excludes_zero() {
                        return Err(Error::WrongShape(
                            "action result is certifiably not skew-symmetric",
                        ));
                    }
                }
            }
            SkewMatrix::numeric(symmetrize_skew(&out))
        }
    }
}

fn symmetrize_skew(m: &Matrix<Ball>) -> Matrix<BigFloat> {
    let n = m.rows();
    let mut out = Matrix::<BigFloat>::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if i < j {
                let v = m.at(i, j).mid().sub(m.at(j, i).mid()).shift(-1);
                out.set(i, j, v.clone());
                out.set(j, i, v.neg());
            }
        }
    }
    out
}

fn ball_mat_mul(a: &Matrix<Ball>, b: &Matrix<Ball>, prec: u32) -> Result<Matrix<Ball>> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let mut out = Matrix::new(a.rows(), b.cols(), vec![Ball::zero(); a.rows() * b.cols()]);
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = Ball::zero();
            for t in 0..a.cols() {
                acc = acc.add(&a.at(i, t).mul(b.at(t, j), prec), prec);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

fn ball_mat_add(a: &Matrix<Ball>, b: &Matrix<Ball>, prec: u32) -> Result<Matrix<Ball>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.at(i, j).add(b.at(i, j), prec));
        }
    }
    Ok(out)
}

/// Gauss–Jordan with largest-midpoint pivoting; every pivot must certifiably
/// exclude zero.
fn ball_mat_inverse(m: &Matrix<Ball>, prec: u32) -> Result<Matrix<Ball>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::new(n, n, vec![Ball::zero(); n * n]);
    for i in 0..n {
        inv.set(i, i, Ball::one());
    }
    for col in 0..n {
        let mut pivot = col;
        for r in (col + 1)..n {
            if a.at(r, col).mid().abs().cmp_value(&a.at(pivot, col).mid().abs())
                == Ordering::Greater
            {
                pivot = r;
            }
        }
        if !a.at(pivot, col).excludes_zero() {
            return Err(Error::Singular);
        }
        a.swap_rows(col, pivot);
        inv.swap_rows(col, pivot);
        let p = a.at(col, col).clone();
        for j in 0..n {
            let v = a.at(col, j).div(&p, prec)?;
            a.set(col, j, v);
            let w = inv.at(col, j).div(&p, prec)?;
            inv.set(col, j, w);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a.at(r, col).clone();
            for j in 0..n {
                let v = a.at(r, j).sub(&f.mul(a.at(col, j), prec), prec);
                a.set(r, j, v);
                let w = inv.at(r, j).sub(&f.mul(inv.at(col, j), prec), prec);
                inv.set(r, j, w);
            }
        }
    }
    Ok(inv)
}

/// Exact Möbius action `theta -> (a theta + b)/(c theta + d)` of an SL2(Z)
/// matrix on a boundary parameter.
pub fn moebius_boundary(m: &IntMatrix, theta: &QuadInt) -> Result<QuadInt> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongShape("expected a 2x2 matrix"));
    }
    if !m.det()?.is_one() {
        return Err(Error::DeterminantNotUnit);
    }
    let a = QuadInt::from_bigint(m.at(0, 0).clone());
    let b = QuadInt::from_bigint(m.at(0, 1).clone());
    let c = QuadInt::from_bigint(m.at(1, 0).clone());
    let d = QuadInt::from_bigint(m.at(1, 1).clone());
    let den = c.checked_mul(theta)?.checked_add(&d)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    a.checked_mul(theta)?
        .checked_add(&b)?
        .checked_div(&den)
}

// ---------------------------------------------------------------------------
// Normal tori, trace lattices, real multiplication
// ---------------------------------------------------------------------------

/// One parameter of a normal-form torus: exact or numeric, positive.
#[derive(Clone, Debug)]
pub enum TorusEntry {
    Exact(QuadInt),
    Numeric(BigFloat),
}

impl TorusEntry {
    fn is_positive(&self) -> bool {
        match self {
            TorusEntry::Exact(q) => q.is_positive(),
            TorusEntry::Numeric(x) => x.is_positive(),
        }
    }
}

impl fmt::Display for TorusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusEntry::Exact(q) => write!(f, "{}", q),
            TorusEntry::Numeric(x) => write!(f, "{}", x.to_decimal(20)),
        }
    }
}

/// Normal-form torus `Theta_0` with parameters `theta_1 > ... > 0`.
#[derive(Clone, Debug)]
pub struct NormalTorus {
    entries: Vec<TorusEntry>,
}

impl NormalTorus {
    pub fn new(entries: Vec<TorusEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("torus needs at least one parameter".into()));
        }
        if !entries.iter().all(|e| e.is_positive()) {
            return Err(Error::NotPositive);
        }
        Ok(NormalTorus { entries })
    }

    pub fn exact(thetas: Vec<QuadInt>) -> Result<Self> {
        Self::new(thetas.into_iter().map(TorusEntry::Exact).collect())
    }

    pub fn half_dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[TorusEntry] {
        &self.entries
    }
}

/// Image of K_0 under the canonical trace: `Z + theta_1 Z + ... +
/// sum p_i(theta) Z` with the `p_i` taken as subset products.
#[derive(Clone, Debug)]
pub struct TraceLattice {
    /// All 2^n subset products, in subset-mask order (the empty product 1
    /// first).
    pub generators: Vec<LatticeGenerator>,
    /// For n = 1 with an exact quadratic parameter: the reduced basis
    /// `{1, theta}`.
    pub reduced_basis: Option<Vec<QuadInt>>,
    /// True when real multiplication is verified and the lattice reduces to
    /// `Z + theta Z`.
    pub rm_reduction: bool,
}

#[derive(Clone, Debug)]
pub struct LatticeGenerator {
    /// Indices (1-based) of the parameters in this product; empty = 1.
    pub subset: Vec<usize>,
    /// Exact value when every factor is exact and the product stays in one
    /// quadratic field.
    pub exact: Option<QuadInt>,
    pub label: String,
}

/// Generators of the trace lattice: all subset products of the parameters.
/// For n = 1 with an exact quadratic algebraic integer the basis reduces to
/// `{1, theta}`.
pub fn trace_lattice(t: &NormalTorus) -> TraceLattice {
    let n = t.half_dimension();
    let mut generators = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        let label = if subset.is_empty() {
            "1".to_string()
        } else {
            subset
                .iter()
                .map(|i| format!("θ{}", i))
                .collect::<Vec<_>>()
                .join("·")
        };
        let exact = subset_product(t, &subset);
        generators.push(LatticeGenerator {
            subset,
            exact,
            label,
        });
    }
    let (reduced_basis, rm_reduction) = if n == 1 {
        match &t.entries()[0] {
            TorusEntry::Exact(q) => {
                let rm = matches!(has_real_multiplication(t), RmStatus::Yes { .. });
                (Some(vec![QuadInt::one(), q.clone()]), rm)
            }
            TorusEntry::Numeric(_) => (None, false),
        }
    } else {
        (None, false)
    };
    TraceLattice {
        generators,
        reduced_basis,
        rm_reduction,
    }
}

fn subset_product(t: &NormalTorus, subset: &[usize]) -> Option<QuadInt> {
    let mut acc = QuadInt::one();
    for &i in subset {
        match &t.entries()[i - 1] {
            TorusEntry::Exact(q) => acc = acc.checked_mul(q).ok()?,
            TorusEntry::Numeric(_) => return None,
        }
    }
    Some(acc)
}

/// Outcome of real-multiplication detection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RmStatus {
    /// Every parameter is a real quadratic algebraic integer; the
    /// endomorphism ring of the trace lattice strictly contains Z.
    Yes { orders: Vec<String> },
    /// Some exact parameter fails to be a quadratic algebraic integer.
    No,
    /// Numeric parameters carry no minimal polynomial; undecidable here.
    Unknown,
}

/// Decides real multiplication for exact parameters: each theta_i must have
/// a monic integral minimal polynomial of degree 2. Numeric entries yield
/// `Unknown`, never an error.
pub fn has_real_multiplication(t: &NormalTorus) -> RmStatus {
    let mut orders = Vec::new();
    for e in t.entries() {
        match e {
            TorusEntry::Numeric(_) => return RmStatus::Unknown,
            TorusEntry::Exact(q) => {
                let p = q.minimal_polynomial();
                if p.degree() == Some(2) && p.is_monic() {
                    orders.push(format!("Z[{}]", q));
                } else {
                    return RmStatus::No;
                }
            }
        }
    }
    RmStatus::Yes { orders }
}
