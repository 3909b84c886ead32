//! Normal form of a skew-symmetric real matrix.
//!
//! `Q^T Theta Q = Theta_0` with orthogonal Q and 2x2 blocks `(0, t; -t, 0)`.
//! The positive block parameters are the square roots of the eigenvalues of
//! the symmetric positive matrix `S = Theta^T Theta = -Theta^2`, computed by
//! cyclic Jacobi rotations in dyadic arithmetic. Because Q and Theta end up
//! as exact dyadic matrices, the reported residual `||Q^T Theta Q - Theta_0||`
//! is computed exactly, not estimated.

use crate::error::{Error, Result};
use crate::real::BigFloat;
use crate::zlinalg::Matrix;
use std::cmp::Ordering;

/// Result of the block-diagonalization.
#[derive(Clone, Debug)]
pub struct NormalFormData {
    /// Block parameters, positive, sorted descending.
    pub thetas: Vec<BigFloat>,
    /// Orthogonal conjugator (columns ordered block by block).
    pub q: Matrix<BigFloat>,
    /// Exact max-norm of `Q^T Theta Q - Theta_0`.
    pub residual: BigFloat,
    /// Exact max-norm of `Q^T Q - I`.
    pub orthogonality: BigFloat,
}

impl NormalFormData {
    /// The parameters as a numeric normal-form torus.
    pub fn torus(&self) -> Result<super::NormalTorus> {
        super::NormalTorus::new(
            self.thetas
                .iter()
                .map(|t| super::TorusEntry::Numeric(t.clone()))
                .collect(),
        )
    }
}

/// Relative genericity tolerance: eigenvalue pairs this close across blocks
/// (or parameters this close to zero) are rejected as non-generic.
fn generic_tolerance() -> BigFloat {
    // 1e-10 < 2^-33
    BigFloat::power_of_two(-33)
}

pub fn normal_form(theta: &Matrix<BigFloat>, prec: u32) -> Result<NormalFormData> {
    let dim = theta.rows();
    if dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    if !theta.is_square() {
        return Err(Error::NotSquare {
            rows: theta.rows(),
            cols: theta.cols(),
        });
    }
    // Exact antisymmetry is the caller's contract (SkewMatrix enforces it).
    let n = dim / 2;
    // S = Theta^T Theta, exact.
    let s = theta.transpose().matmul(theta)?;
    let (eigvals, v) = jacobi_eigen(&s, prec);

    // Sort eigenvalues descending, tracking columns.
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eigvals[j].cmp_value(&eigvals[i]));
    let sorted: Vec<BigFloat> = order.iter().map(|&i| eigvals[i].clone()).collect();

    // Pair consecutive eigenvalues; each theta_j^2 appears twice.
    let tol = generic_tolerance();
    let mut thetas = Vec::with_capacity(n);
    for j in 0..n {
        let mu_a = &sorted[2 * j];
        let mu_b = &sorted[2 * j + 1];
        if !mu_a.is_positive() || !mu_b.is_positive() {
            return Err(Error::NonGeneric("zero eigenvalue pair"));
        }
        let gap = mu_a.sub(mu_b).abs();
        if gap.cmp_value(&mu_a.mul(&tol)) == Ordering::Greater {
            return Err(Error::NonGeneric("eigenvalue pair does not match"));
        }
        if j > 0 {
            let prev = &sorted[2 * j - 1];
            let sep = prev.sub(mu_a).abs();
            if sep.cmp_value(&prev.mul(&tol)) != Ordering::Greater {
                return Err(Error::NonGeneric("repeated block parameters"));
            }
        }
        thetas.push(mu_a.sqrt_r(prec));
    }

    // Build Q: for each block take u = eigencolumn, v = Theta u / theta;
    // columns ordered (v, u) so the block reads (0, theta; -theta, 0).
    let mut q = Matrix::<BigFloat>::zero(dim, dim);
    for j in 0..n {
        let col = order[2 * j];
        let u: Vec<BigFloat> = (0..dim).map(|i| v.at(i, col).clone()).collect();
        let u = renormalize(&u, prec);
        let tu = mat_vec(theta, &u);
        let vv: Vec<BigFloat> = tu.iter().map(|x| x.div_r(&thetas[j], prec)).collect();
        for i in 0..dim {
            q.set(i, 2 * j, vv[i].clone());
            q.set(i, 2 * j + 1, u[i].clone());
        }
    }

    // Exact residuals.
    let qt = q.transpose();
    let conj = qt.matmul(theta)?.matmul(&q)?;
    let mut target = Matrix::<BigFloat>::zero(dim, dim);
    for j in 0..n {
        target.set(2 * j, 2 * j + 1, thetas[j].clone());
        target.set(2 * j + 1, 2 * j, thetas[j].neg());
    }
    let residual = max_abs(&conj.sub(&target)?);
    let orthogonality = max_abs(&qt.matmul(&q)?.sub(&Matrix::identity(dim))?);

    Ok(NormalFormData {
        thetas,
        q,
        residual,
        orthogonality,
    })
}

fn mat_vec(m: &Matrix<BigFloat>, v: &[BigFloat]) -> Vec<BigFloat> {
    (0..m.rows())
        .map(|i| {
            let mut acc = BigFloat::zero();
            for j in 0..m.cols() {
                acc = acc.add(&m.at(i, j).mul(&v[j]));
            }
            acc
        })
        .collect()
}

fn renormalize(v: &[BigFloat], prec: u32) -> Vec<BigFloat> {
    let mut norm2 = BigFloat::zero();
    for x in v {
        norm2 = norm2.add(&x.mul(x));
    }
    let norm = norm2.sqrt_r(prec + 8);
    v.iter().map(|x| x.div_r(&norm, prec)).collect()
}

fn max_abs(m: &Matrix<BigFloat>) -> BigFloat {
    let mut best = BigFloat::zero();
    for e in m.entries() {
        let a = e.abs();
        if a.cmp_value(&best) == Ordering::Greater {
            best = a;
        }
    }
    best
}

/// Cyclic Jacobi eigensolver for a symmetric dyadic matrix. Returns the
/// diagonal and the accumulated orthogonal transform V with `S = V D V^T`.
fn jacobi_eigen(s: &Matrix<BigFloat>, prec: u32) -> (Vec<BigFloat>, Matrix<BigFloat>) {
    let n = s.rows();
    let work = prec + 16;
    let mut a = s.clone();
    let mut v = Matrix::<BigFloat>::identity(n);
    // Stop when every off-diagonal entry is below scale * 2^-(prec+4).
    let scale = max_abs(s).add(&BigFloat::one());
    let threshold = scale.mul(&BigFloat::power_of_two(-(prec as i64) - 4));
    for _sweep in 0..(6 + prec as usize / 8) {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q).clone();
                if apq.abs().cmp_value(&threshold) != Ordering::Greater {
                    continue;
                }
                rotated = true;
                // Classical rotation: tan(2 phi) = 2 a_pq / (a_qq - a_pp).
                let diff = a.at(q, q).sub(a.at(p, p));
                let (c, sn) = rotation_coeffs(&apq, &diff, work);
                apply_rotation(&mut a, p, q, &c, &sn, work);
                rotate_columns(&mut v, p, q, &c, &sn, work);
            }
        }
        if !rotated {
            break;
        }
    }
    let diag = (0..n).map(|i| a.at(i, i).clone()).collect();
    (diag, v)
}

fn rotation_coeffs(apq: &BigFloat, diff: &BigFloat, work: u32) -> (BigFloat, BigFloat) {
    // t = sign(theta) / (|theta| + sqrt(theta^2 + 1)), theta = diff/(2 apq)
    let theta = diff.div_r(&apq.shift(1), work);
    let root = theta.mul(&theta).add(&BigFloat::one()).sqrt_r(work);
    let denom = theta.abs().add(&root);
    let t_mag = BigFloat::one().div_r(&denom, work);
    let t = if theta.is_negative() { t_mag.neg() } else { t_mag };
    let c = BigFloat::one().div_r(&t.mul(&t).add(&BigFloat::one()).sqrt_r(work), work);
    let s = t.mul_r(&c, work);
    (c, s)
}

fn apply_rotation(a: &mut Matrix<BigFloat>, p: usize, q: usize, c: &BigFloat, s: &BigFloat, work: u32) {
    let n = a.rows();
    for k in 0..n {
        let akp = a.at(k, p).clone();
        let akq = a.at(k, q).clone();
        let new_p = c.mul(&akp).sub(&s.mul(&akq)).round_to(work);
        let new_q = s.mul(&akp).add(&c.mul(&akq)).round_to(work);
        a.set(k, p, new_p);
        a.set(k, q, new_q);
    }
    for k in 0..n {
        let apk = a.at(p, k).clone();
        let aqk = a.at(q, k).clone();
        let new_p = c.mul(&apk).sub(&s.mul(&aqk)).round_to(work);
        let new_q = s.mul(&apk).add(&c.mul(&aqk)).round_to(work);
        a.set(p, k, new_p);
        a.set(q, k, new_q);
    }
    // Symmetrize the rotated pair against rounding drift.
    let avg = a.at(p, q).add(a.at(q, p)).shift(-1).round_to(work);
    a.set(p, q, avg.clone());
    a.set(q, p, avg);
}

fn rotate_columns(v: &mut Matrix<BigFloat>, p: usize, q: usize, c: &BigFloat, s: &BigFloat, work: u32) {
    for k in 0..v.rows() {
        let vkp = v.at(k, p).clone();
        let vkq = v.at(k, q).clone();
        let new_p = c.mul(&vkp).sub(&s.mul(&vkq)).round_to(work);
        let new_q = s.mul(&vkp).add(&c.mul(&vkq)).round_to(work);
        v.set(k, p, new_p);
        v.set(k, q, new_q);
    }
}
