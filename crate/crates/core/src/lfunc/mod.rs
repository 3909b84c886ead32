//! The L-function engine: local Frobenius matrices, local zeta factors,
//! excluded primes, partial Euler products, and the prime-by-prime
//! comparison against the elliptic-curve side.
//!
//! Sign convention: the determinant definition is normative. With
//! `char(A^p) = x^(n+1) + c_1 x^n + ... + c_(n+1)` we set `a_i = (-1)^i c_i`,
//! so `a_1 = tr(A^p)` and for n = 1 the denominator is exactly
//! `1 - tr(A^p) z + p z^2`.

mod dirichlet;

pub use dirichlet::{dirichlet_character_group, DirichletCharacter};

use crate::elliptic::{count_points, good_reduction, CurveModel};
use crate::error::{Error, Result};
use crate::exact::{IntPoly, QuadInt, RootOfUnity};
use crate::primes::{is_prime, primes_up_to};
use crate::real::{Ball, BigFloat, ComplexBall};
use crate::zlinalg::{IntMatrix, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

// ---------------------------------------------------------------------------
// Local Frobenius data and local factors
// ---------------------------------------------------------------------------

/// The local Frobenius datum at a prime: the companion-style matrix built
/// from `char(A^p)` for n >= 1, or a single root of unity in the degenerate
/// n = 0 case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalFrobenius {
    Matrix {
        p: u64,
        /// Shape per the construction: first row `(a_1, ..., a_n, p)`,
        /// subdiagonal -1, zeros elsewhere.
        matrix: IntMatrix,
    },
    Scalar {
        p: u64,
        value: RootOfUnity,
    },
}

impl LocalFrobenius {
    pub fn p(&self) -> u64 {
        match self {
            LocalFrobenius::Matrix { p, .. } | LocalFrobenius::Scalar { p, .. } => *p,
        }
    }

    /// Torus half-dimension n (0 for the scalar case).
    pub fn half_dimension(&self) -> usize {
        match self {
            LocalFrobenius::Matrix { matrix, .. } => matrix.rows() - 1,
            LocalFrobenius::Scalar { .. } => 0,
        }
    }
}

/// Builds the local Frobenius matrix from `A` at `p`: computes
/// `char(A^p)`, reads off `a_i = (-1)^i c_i`, and assembles the matrix with
/// first row `(a_1, ..., a_n, p)` and -1 on the subdiagonal.
pub fn build_lp(a: &IntMatrix, p: u64) -> Result<LocalFrobenius> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.entries().iter().any(|e| !e.is_positive()) {
        return Err(Error::NonPositiveEntry);
    }
    if !a.det()?.abs().is_one() {
        return Err(Error::DeterminantNotUnit);
    }
    let dim = a.rows(); // n + 1
    let ap = a.pow(p)?;
    let ch = ap.char_poly()?;
    // ch coefficients ascending; c_i is the coefficient of x^(dim - i).
    let n = dim - 1;
    let mut matrix = Matrix::<BigInt>::zero(dim, dim);
    for i in 1..=n {
        let c_i = ch.coeff(dim - i);
        let a_i = if i % 2 == 0 { c_i } else { -c_i };
        matrix.set(0, i - 1, a_i);
    }
    matrix.set(0, dim - 1, BigInt::from(p));
    for i in 1..dim {
        matrix.set(i, i - 1, BigInt::from(-1));
    }
    Ok(LocalFrobenius::Matrix { p, matrix })
}

/// Degenerate n = 0 case: the Frobenius datum is `zeta^p`.
pub fn build_lp_degenerate(zeta: &RootOfUnity, p: u64) -> Result<LocalFrobenius> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(LocalFrobenius::Scalar {
        p,
        value: zeta.pow_u64(p),
    })
}

/// Denominator polynomial of a local zeta factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalFactor {
    /// `det(I - L_p z)`, integer coefficients ascending, constant term 1.
    Poly { p: u64, denominator: IntPoly },
    /// `1 - w z` with `w` a root of unity, or the factor 1 when the
    /// character vanishes (`w = None`).
    Unit { p: u64, value: Option<RootOfUnity> },
}

impl LocalFactor {
    pub fn p(&self) -> u64 {
        match self {
            LocalFactor::Poly { p, .. } | LocalFactor::Unit { p, .. } => *p,
        }
    }

    /// Degree of the denominator (0 for the constant factor 1).
    pub fn degree(&self) -> usize {
        match self {
            LocalFactor::Poly { denominator, .. } => denominator.degree().unwrap_or(0),
            LocalFactor::Unit { value: Some(_), .. } => 1,
            LocalFactor::Unit { value: None, .. } => 0,
        }
    }

    /// Denominator value at real `z`, as a complex ball.
    pub fn denominator_at(&self, z: &Ball, prec: u32) -> Result<ComplexBall> {
        match self {
            LocalFactor::Poly { denominator, .. } => {
                Ok(ComplexBall::real(denominator.eval_ball(z, prec)))
            }
            LocalFactor::Unit { value: None, .. } => Ok(ComplexBall::one()),
            LocalFactor::Unit { value: Some(w), .. } => {
                let wv = w.value(prec)?;
                let wz = wv.mul(&ComplexBall::real(z.clone()), prec);
                Ok(ComplexBall::one().sub(&wz, prec))
            }
        }
    }
}

/// `det(I - L_p z)`: the reversed characteristic polynomial for the matrix
/// case, `1 - w z` in the degenerate case.
pub fn local_zeta(lp: &LocalFrobenius) -> Result<LocalFactor> {
    match lp {
        LocalFrobenius::Matrix { p, matrix } => {
            let ch = matrix.char_poly()?;
            let denominator = ch.reversed(matrix.rows() + 1);
            debug_assert!(denominator.coeff(0).is_one());
            Ok(LocalFactor::Poly {
                p: *p,
                denominator,
            })
        }
        LocalFrobenius::Scalar { p, value } => Ok(LocalFactor::Unit {
            p: *p,
            value: Some(value.clone()),
        }),
    }
}

/// `1 - chi(p) z`; bad primes (chi(p) = 0) give the factor 1.
pub fn dirichlet_local_factor(chi: &DirichletCharacter, p: u64) -> Result<LocalFactor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(LocalFactor::Unit {
        p,
        value: chi.at(p),
    })
}

// ---------------------------------------------------------------------------
// Excluded primes
// ---------------------------------------------------------------------------

/// Primes excluded from the Euler product: divisors of `tr^2(A) - (n+1)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExcludedPrimes {
    /// `tr^2(A) = (n+1)^2`: every prime divides zero; the product is empty.
    All,
    List(Vec<u64>),
}

impl ExcludedPrimes {
    pub fn contains(&self, p: u64) -> bool {
        match self {
            ExcludedPrimes::All => true,
            ExcludedPrimes::List(v) => v.contains(&p),
        }
    }

    pub fn none() -> Self {
        ExcludedPrimes::List(Vec::new())
    }
}

pub fn excluded_primes(a: &IntMatrix, bound: u64) -> Result<ExcludedPrimes> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.det()?.abs().is_one() {
        return Err(Error::DeterminantNotUnit);
    }
    let t = a.trace()?;
    let dim = BigInt::from(a.rows() as u64);
    let disc = &t * &t - &dim * &dim;
    if disc.is_zero() {
        return Ok(ExcludedPrimes::All);
    }
    let disc = disc.abs();
    let list = primes_up_to(bound)
        .into_iter()
        .filter(|&p| disc.mod_floor(&BigInt::from(p)).is_zero())
        .collect();
    Ok(ExcludedPrimes::List(list))
}

// ---------------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------------

/// Partial Euler product evaluation.
#[derive(Clone, Debug)]
pub struct EulerEval {
    pub s: BigRational,
    pub prime_bound: u64,
    pub excluded: ExcludedPrimes,
    pub value: ComplexBall,
    pub precision: u32,
    pub primes_used: usize,
}

/// Multiplies `1/denominator(p^-s)` over the included primes `p <= bound`
/// in ascending order at the given precision.
///
/// The per-prime factor values depend only on `(p, s, precision)` and may be
/// computed on any number of threads; the final reduction is always the
/// ascending-prime sequential product, so the result is bit-identical for
/// every thread count.
pub fn euler_product<F>(
    factor_at: F,
    s: &BigRational,
    prime_bound: u64,
    excluded: &ExcludedPrimes,
    precision: u32,
    threads: usize,
) -> Result<EulerEval>
where
    F: Fn(u64) -> Result<LocalFactor> + Sync,
{
    if prime_bound < 2 {
        return Err(Error::InvalidArgument("prime bound must be >= 2".into()));
    }
    let primes: Vec<u64> = match excluded {
        ExcludedPrimes::All => Vec::new(),
        ExcludedPrimes::List(skip) => primes_up_to(prime_bound)
            .into_iter()
            .filter(|p| !skip.contains(p))
            .collect(),
    };
    let prec = precision;
    let per_prime = |p: u64| -> Result<ComplexBall> {
        let factor = factor_at(p)?;
        let z = p_to_minus_s(p, s, prec)?;
        let denom = factor.denominator_at(&z, prec)?;
        if !denom
            .re
            .mul(&denom.re, prec)
            .add(&denom.im.mul(&denom.im, prec), prec)
            .excludes_zero()
        {
            return Err(Error::DenominatorZero(p));
        }
        ComplexBall::one().div(&denom, prec)
    };
    let factors: Vec<ComplexBall> = if threads <= 1 || primes.len() < 64 {
        primes.iter().map(|&p| per_prime(p)).collect::<Result<_>>()?
    } else {
        parallel_map(&primes, threads, &per_prime)?
    };
    let mut value = ComplexBall::one();
    for f in &factors {
        value = value.mul(f, prec);
    }
    Ok(EulerEval {
        s: s.clone(),
        prime_bound,
        excluded: excluded.clone(),
        value,
        precision,
        primes_used: primes.len(),
    })
}

/// Chunked deterministic parallel map: results are reassembled in input
/// order regardless of scheduling.
fn parallel_map<T, F>(primes: &[u64], threads: usize, f: &F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    let chunk = primes.len().div_ceil(threads);
    let mut out: Vec<Result<Vec<T>>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = primes
            .chunks(chunk)
            .map(|ps| scope.spawn(move || ps.iter().map(|&p| f(p)).collect::<Result<Vec<T>>>()))
            .collect();
        for h in handles {
            out.push(h.join().expect("worker thread panicked"));
        }
    });
    let mut flat = Vec::with_capacity(primes.len());
    for chunk_result in out {
        flat.extend(chunk_result?);
    }
    Ok(flat)
}

/// `p^(-s)` as a real ball: exact rational powering for integer s, else
/// `exp(-s ln p)`.
fn p_to_minus_s(p: u64, s: &BigRational, prec: u32) -> Result<Ball> {
    if s.denom().is_one() {
        let e = i64::try_from(s.numer())
            .map_err(|_| Error::InvalidArgument("exponent out of range".into()))?;
        let (num, den) = if e >= 0 {
            (BigInt::one(), BigInt::from(p).pow(e as u32))
        } else {
            (BigInt::from(p).pow((-e) as u32), BigInt::one())
        };
        return Ok(Ball::from_ratio(&num, &den, prec));
    }
    let ln_p = Ball::from_bigint(&BigInt::from(p)).ln(prec + 16)?;
    let s_ball = Ball::from_ratio(s.numer(), s.denom(), prec + 16);
    Ok(ln_p.mul(&s_ball, prec + 16).neg().exp(prec))
}

// ---------------------------------------------------------------------------
// Artin pair combination
// ---------------------------------------------------------------------------

/// A unit complex value: exact root of unity or a numeric point on the
/// circle.
#[derive(Clone, Debug)]
pub enum UnitValue {
    Exact(RootOfUnity),
    Numeric(ComplexBall),
}

impl UnitValue {
    fn to_ball(&self, prec: u32) -> Result<ComplexBall> {
        match self {
            UnitValue::Exact(w) => w.value(prec),
            UnitValue::Numeric(z) => Ok(z.clone()),
        }
    }
}

/// Result of combining a degree-1 value with its conjugate into the diagonal
/// degree-2 local representation.
#[derive(Clone, Debug)]
pub struct ArtinPair {
    /// diag(v, conj(v)).
    pub diagonal: (ComplexBall, ComplexBall),
    /// `det(I - diag(v, v̄) p^-s)^-1`.
    pub combined_factor: ComplexBall,
    /// Product of the two degree-1 factors `(1 - v p^-s)^-1 (1 - v̄ p^-s)^-1`.
    pub split_product: ComplexBall,
}

/// Combines `sigma(Fr_p)` with its conjugate: the determinant route and the
/// product of degree-1 factors must agree; the agreement is asserted within
/// the certified radii plus `2^-100`.
pub fn artin_pair_combine(
    sigma_value: &UnitValue,
    p: u64,
    s: &BigRational,
    prec: u32,
) -> Result<ArtinPair> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let v = sigma_value.to_ball(prec + 16)?;
    let vbar = v.conj();
    let z = ComplexBall::real(p_to_minus_s(p, s, prec + 16)?);
    // det(I - diag(v, v̄) z) = (1 - v z)(1 - v̄ z) = 1 - (v + v̄) z + (v v̄) z^2
    let one = ComplexBall::one();
    let tr = v.add(&vbar, prec);
    let nm = v.mul(&vbar, prec);
    let det = one
        .sub(&tr.mul(&z, prec), prec)
        .add(&nm.mul(&z, prec).mul(&z, prec), prec);
    let combined_factor = one.div(&det, prec)?;
    let f1 = one.div(&one.sub(&v.mul(&z, prec), prec), prec)?;
    let f2 = one.div(&one.sub(&vbar.mul(&z, prec), prec), prec)?;
    let split_product = f1.mul(&f2, prec);
    let dist = combined_factor.distance_upper(&split_product);
    let slack = BigFloat::power_of_two(-100);
    if dist
        .cmp_value(&combined_factor.re.rad().add(split_product.re.rad()).add(&slack).shift(4))
        == Ordering::Greater
    {
        return Err(Error::InvalidArgument(format!(
            "determinant and split factors disagree beyond certified error (dist = {})",
            dist.to_decimal(8)
        )));
    }
    Ok(ArtinPair {
        diagonal: (v, vbar),
        combined_factor,
        split_product,
    })
}

// ---------------------------------------------------------------------------
// Comparison report
// ---------------------------------------------------------------------------

/// One row of the curve-versus-torus comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub p: u64,
    pub ap: i64,
    pub tr_ap: BigInt,
    /// `1 - a_p z + p z^2`, coefficients ascending.
    pub curve_factor: IntPoly,
    /// `1 - tr(A^p) z + p z^2`, coefficients ascending.
    pub torus_factor: IntPoly,
    pub excluded: bool,
    pub equal: bool,
}

/// Emits one row per good prime `p <= bound`: both local factors, the
/// excluded flag, and an equality flag. The report never asserts equality;
/// it records what was computed.
pub fn compare_report(
    a: &IntMatrix,
    curve: &CurveModel,
    prime_bound: u64,
    threads: usize,
) -> Result<Vec<CompareRow>> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::WrongShape("comparison expects the 2x2 torus matrix"));
    }
    if !a.det()?.abs().is_one() {
        return Err(Error::DeterminantNotUnit);
    }
    let excluded = excluded_primes(a, prime_bound)?;
    let good: Vec<u64> = primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| good_reduction(curve, p).unwrap_or(false))
        .collect();
    let per_prime = |p: u64| -> Result<(u64, i64, BigInt)> {
        let rec = count_points(curve, p)?;
        let tr = a.pow(p)?.trace()?;
        Ok((p, rec.ap, tr))
    };
    let rows_raw: Vec<(u64, i64, BigInt)> = if threads <= 1 || good.len() < 8 {
        good.iter().map(|&p| per_prime(p)).collect::<Result<_>>()?
    } else {
        parallel_map(&good, threads, &per_prime)?
    };
    let mut rows = Vec::with_capacity(rows_raw.len());
    for (p, ap, tr) in rows_raw {
        let curve_factor = IntPoly::new(vec![
            BigInt::one(),
            BigInt::from(-ap),
            BigInt::from(p),
        ]);
        let torus_factor = IntPoly::new(vec![BigInt::one(), -&tr, BigInt::from(p)]);
        let equal = curve_factor == torus_factor;
        rows.push(CompareRow {
            p,
            ap,
            tr_ap: tr,
            excluded: excluded.contains(p),
            curve_factor,
            torus_factor,
            equal,
        });
    }
    Ok(rows)
}

/// Torus-side local factor provider for a fixed matrix A.
pub fn torus_factor_at(a: &IntMatrix) -> impl Fn(u64) -> Result<LocalFactor> + Sync + '_ {
    move |p| local_zeta(&build_lp(a, p)?)
}

/// Exact trace of `A^p` through quadratic powering of the dominant
/// eigenvalue: `tr(A^p) = lambda^p + conj(lambda)^p`. Used as the second
/// route in the trace cross-checks.
pub fn trace_power_via_eigenvalue(lambda: &QuadInt, p: u64) -> Result<BigInt> {
    let lp = lambda.pow(p as i64)?;
    let t = lp.trace();
    if !t.denom().is_one() {
        return Err(Error::InvalidArgument(
            "eigenvalue power has non-integral trace".into(),
        ));
    }
    Ok(t.numer().clone())
}
