//! Polynomials over the rationals, used for characteristic-matrix
//! elimination (similarity testing works over Q[x]).

use crate::exact::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>, // lowest degree first, leading nonzero
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        RatPoly::constant(BigRational::from(n.clone()))
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        RatPoly::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let d = other.degree().unwrap();
        let lead = other.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = vec![
            BigRational::zero();
            self.coeffs.len().saturating_sub(other.coeffs.len()) + 1
        ];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            let shift = rd - d;
            q[shift] = factor.clone();
            // rem -= factor * x^shift * other
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&RatPoly::new(sub));
        }
        (RatPoly::new(q), rem)
    }

    /// Scales to a monic polynomial; zero stays zero. Returns the monic
    /// polynomial and the leading coefficient divided out.
    pub fn monic(&self) -> (Self, BigRational) {
        match self.leading() {
            None => (self.clone(), BigRational::one()),
            Some(l) => {
                let l = l.clone();
                (
                    RatPoly {
                        coeffs: self.coeffs.iter().map(|c| c / &l).collect(),
                    },
                    l,
                )
            }
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("({})x", c),
                _ => format!("({})x^{}", c, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> RatPoly {
        RatPoly::new(v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
    }

    #[test]
    fn division() {
        // x^3 - 1 = (x - 1)(x^2 + x + 1)
        let num = p(&[-1, 0, 0, 1]);
        let den = p(&[-1, 1]);
        let (q, r) = num.div_rem(&den);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        // with remainder
        let (q2, r2) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q2, p(&[-1, 1]));
        assert_eq!(r2, p(&[2]));
    }

    #[test]
    fn monic_normalization() {
        let (m, l) = p(&[2, 4]).monic();
        assert_eq!(m, RatPoly::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::one(),
        ]));
        assert_eq!(l, BigRational::from(BigInt::from(4)));
    }
}
