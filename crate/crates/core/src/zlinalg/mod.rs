//! Exact integer and rational linear algebra.
//!
//! Characteristic polynomials (Faddeev–LeVerrier), Smith normal forms over Z
//! and Q[x] with tracked unimodular transforms, the rational similarity
//! criterion through characteristic matrices, the 2x2 endomorphism
//! normalization, and Perron–Frobenius eigendata (exact in quadratic fields,
//! certified enclosures otherwise).

mod matrix;
mod pf;
mod ratpoly;
mod snf;

pub use matrix::{Field, IntMatrix, Matrix, Ring};
pub use pf::{normalize_endomorphism, perron_frobenius, PFData, PfMode};
pub use ratpoly::RatPoly;
pub use snf::{char_matrix, similar_via_char_matrix, smith_normal_form, SmithRing, SnfResult};
