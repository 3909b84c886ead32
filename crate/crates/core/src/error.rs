//! Crate-wide error type.

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors raised by the library.
///
/// Parse errors for the text grammars live in [`crate::grammar::ParseError`];
/// everything here is a violation of a mathematical precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed quadratic fields: sqrt({0}) vs sqrt({1})")]
    MixedField(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected an irrational quadratic input, got a rational value")]
    RationalInput,
    #[error("expected a positive value")]
    NotPositive,
    #[error("negative radicand {0}: only real quadratic fields are supported")]
    NegativeRadicand(BigInt),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("determinant is not a unit (expected ±1)")]
    DeterminantNotUnit,
    #[error("zero determinant")]
    ZeroDeterminant,
    #[error("top-right entry must be 1")]
    TopRightNotOne,
    #[error("matrix does not have the required shape: {0}")]
    WrongShape(&'static str),
    #[error("singular matrix")]
    Singular,
    #[error("matrix entry must be strictly positive")]
    NonPositiveEntry,
    #[error("eigenvalue is not quadratic; exact mode is limited to dimension 2")]
    NonQuadraticEigenvalue,
    #[error("discriminant is not positive: not a real quadratic endomorphism")]
    DiscriminantNotPositive,
    #[error("roots are rational or of equal magnitude: degenerate endomorphism")]
    DegenerateRoots,
    #[error("working precision exhausted: {0}")]
    PrecisionExhausted(&'static str),
    #[error("state has no period candidate")]
    NoPeriodCandidate,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("curve is singular (zero discriminant)")]
    SingularCurve,
    #[error("all primes are excluded: tr^2(A) = (n+1)^2 is degenerate")]
    AllPrimesExcluded,
    #[error("local factor denominator vanishes at the evaluation point (p = {0})")]
    DenominatorZero(u64),
    #[error("non-generic skew matrix: {0}")]
    NonGeneric(&'static str),
    #[error("precision must be at least {0} bits")]
    PrecisionTooLow(u32),
    #[error("unit index search exceeded the cap {0}: arithmetic bug")]
    UnitIndexOverflow(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
