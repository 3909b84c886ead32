//! The endomorphism-level functor between complex-multiplication lattices
//! and real-multiplication pseudo-lattices, the unit projection, and unit
//! indices of sublattices.
//!
//! On matrices the functor is the sign flip of the bottom row,
//! `(a, b; c, d) -> (a, b; -c, -d)`. In the normalized shape `(t, n; 1, 0)`
//! the image `(t, n; -1, 0)` acts on a pseudo-lattice `Z + Z*theta` by
//! `omega * 1 = t + n*theta`, `omega * theta = -1`, which pins `omega` as a
//! root of `x^2 - t x + n`; the matrix trace is therefore preserved and the
//! determinant flips against the field norm.

use crate::cfrac::{fundamental_unit, UnitData};
use crate::error::{Error, Result};
use crate::exact::{extract_square_part, QuadInt};
use crate::zlinalg::{normalize_endomorphism, IntMatrix, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which side of the functor a 2x2 endomorphism matrix lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Endomorphism of a complex-multiplication lattice.
    Complex,
    /// Endomorphism of a real-multiplication pseudo-lattice.
    Real,
}

/// 2x2 endomorphism matrix tagged with its side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    pub m: IntMatrix,
    pub side: Side,
}

impl EndoMatrix {
    pub fn new(m: IntMatrix, side: Side) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::WrongShape("endomorphism matrices are 2x2"));
        }
        if m.det()?.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        Ok(EndoMatrix { m, side })
    }

    pub fn complex(m: IntMatrix) -> Result<Self> {
        Self::new(m, Side::Complex)
    }
}

impl fmt::Display for EndoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m.grammar_string())
    }
}

/// `(a, b; c, d) -> (a, b; -c, -d)`: the functor on endomorphisms.
pub fn functor_on_endo(e: &EndoMatrix) -> Result<EndoMatrix> {
    if e.side != Side::Complex {
        return Err(Error::InvalidArgument(
            "functor_on_endo expects a complex-side endomorphism".into(),
        ));
    }
    let m = &e.m;
    let out = Matrix::from_rows(vec![
        vec![m.at(0, 0).clone(), m.at(0, 1).clone()],
        vec![-m.at(1, 0), -m.at(1, 1)],
    ]);
    EndoMatrix::new(out, Side::Real)
}

/// Brings `(a, 1; c, d)` to the complex-side normalized shape
/// `(a+d, c-ad; 1, 0)` (the transpose of the normalized form, which is
/// similar to it).
pub fn normalize_complex_side(m: &IntMatrix) -> Result<IntMatrix> {
    let (normalized, _) = normalize_endomorphism(m)?;
    Ok(normalized.transpose())
}

/// The real quadratic integer defined by a real-side matrix `(t, n; -1, 0)`
/// acting on a pseudo-lattice `Z + Z*theta`: the root of `x^2 - t x + n`
/// of larger absolute value.
///
/// The `theta` argument records which pseudo-lattice carries the action; the
/// value of `omega` depends only on `(t, n)`.
pub fn real_quadratic_from_normalized(m: &IntMatrix, _theta: &QuadInt) -> Result<QuadInt> {
    let (t, n) = real_side_shape(m)?;
    let disc = &t * &t - (&n << 2u32);
    if !disc.is_positive() {
        return Err(Error::DiscriminantNotPositive);
    }
    let (f, d0) = extract_square_part(&disc);
    if d0.is_one() {
        // Rational roots: not a quadratic integer.
        return Err(Error::DegenerateRoots);
    }
    if t.is_zero() {
        // Roots ±sqrt(-n) have equal magnitude.
        return Err(Error::DegenerateRoots);
    }
    // Larger-magnitude root: add the radical in the direction of t.
    let b = if t.is_positive() { f } else { -f };
    QuadInt::new(t, b, BigInt::from(2), d0)
}

/// `(t, n; -1, 0) -> (t, 1; -1, 0)`: the unit projection. The defining
/// identity `(t, n; -1, 0) (1, theta)^T = (t, 1; -1, 0) (1, n*theta)^T`
/// holds symbolically for every t, n, theta; see `eq_identity_holds` in the
/// tests.
pub fn unit_projection(m: &IntMatrix) -> Result<IntMatrix> {
    let (t, n) = real_side_shape(m)?;
    if n.is_zero() {
        return Err(Error::WrongShape("unit projection needs n != 0"));
    }
    Ok(Matrix::from_rows(vec![
        vec![t, BigInt::one()],
        vec![BigInt::from(-1), BigInt::zero()],
    ]))
}

fn real_side_shape(m: &IntMatrix) -> Result<(BigInt, BigInt)> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongShape("expected a 2x2 matrix"));
    }
    if *m.at(1, 0) != BigInt::from(-1) || !m.at(1, 1).is_zero() {
        return Err(Error::WrongShape("expected the shape (t, n; -1, 0)"));
    }
    Ok((m.at(0, 0).clone(), m.at(0, 1).clone()))
}

/// Unit index data: the minimal exponent g with `epsilon^g` inside the
/// index-n sublattice `Z + (n*theta) Z`.
#[derive(Clone, Debug)]
pub struct UnitIndexData {
    pub epsilon: QuadInt,
    pub n: BigInt,
    pub g: u64,
    /// `epsilon^g`, for reporting.
    pub power: QuadInt,
}

/// Computes the least g >= 1 such that `epsilon^g = a + b*theta` with
/// integers a, b and `n | b`.
///
/// The search is capped at `6n`; the unit index of a conductor-n suborder
/// always divides group orders below that bound, so exceeding the cap
/// indicates an arithmetic bug rather than a large answer.
pub fn unit_index(theta: &QuadInt, n: &BigInt) -> Result<UnitIndexData> {
    if theta.is_rational() {
        return Err(Error::RationalInput);
    }
    if n < &BigInt::one() {
        return Err(Error::InvalidArgument("sublattice index must be >= 1".into()));
    }
    let UnitData { epsilon, .. } = fundamental_unit(theta)?;
    let cap_big = BigInt::from(6) * n;
    let cap = u64::try_from(&cap_big)
        .map_err(|_| Error::InvalidArgument("sublattice index too large".into()))?;
    let mut power = QuadInt::one();
    for g in 1..=cap {
        power = power.checked_mul(&epsilon)?;
        let (u, v) = power.decompose_in_basis(theta)?;
        if u.is_integer() && v.is_integer() && v.to_integer().mod_floor(n).is_zero() {
            return Ok(UnitIndexData {
                epsilon,
                n: n.clone(),
                g,
                power,
            });
        }
    }
    Err(Error::UnitIndexOverflow(cap))
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
    fn functor_flips_bottom_row() {
        let e = EndoMatrix::complex(m(&[&[6, -5], &[1, 0]])).unwrap();
        let f = functor_on_endo(&e).unwrap();
        assert_eq!(f.m, m(&[&[6, -5], &[-1, 0]]));
        assert_eq!(f.side, Side::Real);

        let e2 = EndoMatrix::complex(m(&[&[2, 1], &[1, 0]])).unwrap();
        assert_eq!(functor_on_endo(&e2).unwrap().m, m(&[&[2, 1], &[-1, 0]]));

        let id = EndoMatrix::complex(m(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(functor_on_endo(&id).unwrap().m, m(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn functor_rejects_singular() {
        assert!(matches!(
            EndoMatrix::complex(m(&[&[1, 1], &[2, 2]])),
            Err(Error::ZeroDeterminant)
        ));
    }

    #[test]
    fn normalization_chain() {
        // (2,1;3,4): trace 6, c-ad = -5 -> (6, -5; 1, 0), then flip.
        let norm = normalize_complex_side(&m(&[&[2, 1], &[3, 4]])).unwrap();
        assert_eq!(norm, m(&[&[6, -5], &[1, 0]]));
        let img = functor_on_endo(&EndoMatrix::complex(norm).unwrap()).unwrap();
        assert_eq!(img.m, m(&[&[6, -5], &[-1, 0]]));
    }

    #[test]
    fn omega_from_normalized() {
        let theta = q(0, 1, 1, 2);
        // (t, n) = (6, -5): roots of x^2 - 6x - 5 are 3 ± sqrt14.
        let w = real_quadratic_from_normalized(&m(&[&[6, -5], &[-1, 0]]), &theta).unwrap();
        assert_eq!(w, q(3, 1, 1, 14));
        // (t, n) = (2, -1): 1 + sqrt2.
        let w2 = real_quadratic_from_normalized(&m(&[&[2, -1], &[-1, 0]]), &theta).unwrap();
        assert_eq!(w2, q(1, 1, 1, 2));
        // (t, n) = (0, -1): rational roots ±1, degenerate.
        assert!(matches!(
            real_quadratic_from_normalized(&m(&[&[0, -1], &[-1, 0]]), &theta),
            Err(Error::DegenerateRoots)
        ));
        // negative trace picks the larger-magnitude (negative) root
        let w3 = real_quadratic_from_normalized(&m(&[&[-6, -5], &[-1, 0]]), &theta).unwrap();
        assert_eq!(w3, q(-3, -1, 1, 14));
        assert!(matches!(
            real_quadratic_from_normalized(&m(&[&[1, 1], &[-1, 0]]), &theta),
            Err(Error::DiscriminantNotPositive)
        ));
    }

    #[test]
    fn trace_preserved_and_norm_flipped() {
        let theta = q(0, 1, 1, 2);
        for (t, n_) in [(6i64, -5i64), (5, 3), (7, -2), (-4, -9)] {
            let complex = m(&[&[t, n_], &[1, 0]]);
            let real = functor_on_endo(&EndoMatrix::complex(complex.clone()).unwrap())
                .unwrap()
                .m;
            let omega = match real_quadratic_from_normalized(&real, &theta) {
                Ok(w) => w,
                Err(_) => continue,
            };
            use num_rational::BigRational;
            assert_eq!(omega.trace(), BigRational::from(BigInt::from(t)));
            // det(complex side) = -norm(omega)
            assert_eq!(
                BigRational::from(complex.det().unwrap()),
                -omega.norm()
            );
        }
    }

    #[test]
    fn unit_projection_shape() {
        assert_eq!(
            unit_projection(&m(&[&[3, 2], &[-1, 0]])).unwrap(),
            m(&[&[3, 1], &[-1, 0]])
        );
        assert_eq!(
            unit_projection(&m(&[&[6, -5], &[-1, 0]])).unwrap(),
            m(&[&[6, 1], &[-1, 0]])
        );
        assert!(unit_projection(&m(&[&[2, 0], &[-1, 0]])).is_err());
        assert!(unit_projection(&m(&[&[2, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn eq_identity_holds() {
        // (t, n; -1, 0) (1, theta)^T = (t, 1; -1, 0) (1, n theta)^T
        let theta = q(0, 1, 1, 2);
        for (t, n_) in [(3i64, 2i64), (6, -5), (-2, 7)] {
            let omega = m(&[&[t, n_], &[-1, 0]]);
            let projected = unit_projection(&omega).unwrap();
            let v1 = vec![QuadInt::one(), theta.clone()];
            let ntheta = QuadInt::from_i64(n_).checked_mul(&theta).unwrap();
            let v2 = vec![QuadInt::one(), ntheta];
            let lhs = omega.to_quad().matvec(&v1).unwrap();
            let rhs = projected.to_quad().matvec(&v2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn unit_index_for_sqrt2() {
        let theta = q(0, 1, 1, 2);
        let one = unit_index(&theta, &BigInt::one()).unwrap();
        assert_eq!(one.g, 1);
        let two = unit_index(&theta, &BigInt::from(2)).unwrap();
        assert_eq!(two.g, 2);
        assert_eq!(two.power, q(3, 2, 1, 2)); // eps^2 = 3 + 2 sqrt2
        let five = unit_index(&theta, &BigInt::from(5)).unwrap();
        assert_eq!(five.g, 3);
        assert_eq!(five.power, q(7, 5, 1, 2)); // eps^3 = 7 + 5 sqrt2
    }

    #[test]
    fn unit_index_rejects_rational() {
        assert!(matches!(
            unit_index(&QuadInt::from_i64(3), &BigInt::from(2)),
            Err(Error::RationalInput)
        ));
    }
}
