//! Continued fractions, fundamental units, and the Jacobi–Perron mode.
//!
//! The n = 1 production path runs entirely in exact quadratic arithmetic:
//! the simple continued fraction of a quadratic irrational is eventually
//! periodic, one period of the purely periodic tail yields the fundamental
//! unit of the coefficient ring of `Z + Z*theta`, and the multiplication
//! matrix of the smallest totally positive power of that unit is the matrix
//! with Perron–Frobenius eigenvector `(1, theta)`.
//!
//! For n >= 2 the Jacobi–Perron iteration is run in ball arithmetic. Period
//! detection there is a heuristic (eventual periodicity of Jacobi–Perron
//! expansions is open in general) and is labelled as such.

use crate::error::{Error, Result};
use crate::exact::{extract_square_part, QuadInt};
use crate::real::{Ball, BigFloat};
use crate::zlinalg::{IntMatrix, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Eventually periodic simple continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl CfExpansion {
    /// Folds the digits back through Möbius maps, reproducing the input
    /// exactly: the purely periodic tail is recovered as the fixed point of
    /// one period, then the preperiod is applied in reverse.
    pub fn reconstruct(&self) -> Result<QuadInt> {
        // Fixed point of x = M(x) for the period convergent matrix
        // M = prod (a_i, 1; 1, 0): x = (p x + p') / (q x + q').
        let m = convergent_matrix(&self.period);
        let p = m.at(0, 0);
        let p1 = m.at(0, 1);
        let q = m.at(1, 0);
        let q1 = m.at(1, 1);
        // q x^2 + (q' - p) x - p' = 0, take the positive root (tail > 1).
        let a = q.clone();
        let b = q1 - p;
        let c = -p1.clone();
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if !disc.is_positive() {
            return Err(Error::DiscriminantNotPositive);
        }
        let (f, d0) = extract_square_part(&disc);
        let tail = if d0.is_one() {
            QuadInt::new(-&b + &f, BigInt::zero(), &a << 1u32, BigInt::from(2))?
        } else {
            QuadInt::new(-&b, f, &a << 1u32, d0)?
        };
        // Undo the preperiod: x_{k} = a_k + 1/x_{k+1}.
        let mut x = tail;
        for a_k in self.preperiod.iter().rev() {
            x = QuadInt::from_bigint(a_k.clone()).checked_add(&x.inv()?)?;
        }
        Ok(x)
    }
}

/// Convergent matrix `prod (a_i, 1; 1, 0)` of a digit word.
pub fn convergent_matrix(digits: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::identity(2);
    for a in digits {
        let step = Matrix::from_rows(vec![
            vec![a.clone(), BigInt::one()],
            vec![BigInt::one(), BigInt::zero()],
        ]);
        m = m.matmul(&step).expect("2x2");
    }
    m
}

/// Exact continued fraction of a quadratic irrational, with the minimal
/// period found by the first repetition of a complete quotient.
pub fn cf_expand(theta: &QuadInt) -> Result<CfExpansion> {
    if theta.is_rational() {
        return Err(Error::RationalInput);
    }
    let mut digits: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<QuadInt, usize> = HashMap::new();
    let mut x = theta.clone();
    loop {
        if let Some(&start) = seen.get(&x) {
            let preperiod = digits[..start].to_vec();
            let period = digits[start..].to_vec();
            return Ok(CfExpansion { preperiod, period });
        }
        seen.insert(x.clone(), digits.len());
        let a = x.floor();
        let frac = x.checked_sub(&QuadInt::from_bigint(a.clone()))?;
        digits.push(a);
        // Complete quotients of a quadratic irrational never hit zero.
        x = frac.inv()?;
    }
}

/// Fundamental unit of a real quadratic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitData {
    /// The smallest unit > 1 with norm ±1 of the coefficient ring of
    /// `Z + Z*theta`.
    pub epsilon: QuadInt,
    /// Conductor of that order inside the maximal order.
    pub order_index: BigInt,
}

/// Fundamental unit of the coefficient ring of `Z + Z*theta`, computed from
/// one period of the purely periodic continued-fraction tail: with
/// convergent matrix `(p, p'; q, q')` over the period, `q*tail + q'` is the
/// fundamental automorph of the associated binary form.
pub fn fundamental_unit(theta: &QuadInt) -> Result<UnitData> {
    if theta.is_rational() {
        return Err(Error::RationalInput);
    }
    let exp = cf_expand(theta)?;
    // Complete quotient at the start of the period (purely periodic).
    let mut x = theta.clone();
    for _ in 0..exp.preperiod.len() {
        let a = x.floor();
        x = x.checked_sub(&QuadInt::from_bigint(a))?.inv()?;
    }
    let m = convergent_matrix(&exp.period);
    let q = QuadInt::from_bigint(m.at(1, 0).clone());
    let q1 = QuadInt::from_bigint(m.at(1, 1).clone());
    let epsilon = q.checked_mul(&x)?.checked_add(&q1)?;
    let norm = epsilon.norm();
    debug_assert!(
        norm.numer().abs().is_one() && norm.denom().is_one(),
        "fundamental unit must have norm ±1"
    );
    debug_assert!(epsilon.cmp_value(&QuadInt::one()) == Ok(Ordering::Greater));
    Ok(UnitData {
        epsilon,
        order_index: conductor_of(theta),
    })
}

/// Conductor f with disc(theta) = f^2 * d_K, d_K fundamental.
fn conductor_of(theta: &QuadInt) -> BigInt {
    let p = theta.minimal_polynomial();
    // primitive A x^2 + B x + C, discriminant B^2 - 4AC
    let a = p.coeff(2);
    let b = p.coeff(1);
    let c = p.coeff(0);
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    let (f0, m) = extract_square_part(&disc);
    if m.mod_floor(&BigInt::from(4)) == BigInt::one() {
        f0
    } else {
        // d_K = 4m, so f = f0 / 2 (f0 is even because disc ≡ 0 mod 4 here).
        f0 >> 1u32
    }
}

/// The positive integer matrix whose Perron–Frobenius eigenvector is
/// `(1, theta)`: the multiplication matrix of the smallest power of the
/// fundamental unit that acts with strictly positive entries on the basis
/// `(1, theta)`.
pub fn unit_matrix_for_theta(theta: &QuadInt) -> Result<UnitMatrix> {
    if theta.is_rational() {
        return Err(Error::RationalInput);
    }
    if !theta.is_positive() {
        return Err(Error::NotPositive);
    }
    let unit = fundamental_unit(theta)?;
    let eps = &unit.epsilon;
    for m in 1..=64i64 {
        let mu = eps.pow(m)?;
        if let Some(a) = multiplication_matrix(&mu, theta)? {
            if a.entries().iter().all(|e| e.is_positive()) {
                check_not_proper_power(&a, eps, m, theta)?;
                // Postconditions: A (1, theta)^T = mu (1, theta)^T, |det| = 1.
                verify_action(&a, &mu, theta)?;
                debug_assert!(a.det()?.abs().is_one());
                return Ok(UnitMatrix {
                    matrix: a,
                    lambda: mu,
                    power: m as u64,
                    unit,
                });
            }
        }
    }
    Err(Error::PrecisionExhausted(
        "no totally positive unit power found below the cap",
    ))
}

/// Result of [`unit_matrix_for_theta`].
#[derive(Clone, Debug)]
pub struct UnitMatrix {
    pub matrix: IntMatrix,
    /// The eigenvalue `epsilon^power`.
    pub lambda: QuadInt,
    pub power: u64,
    pub unit: UnitData,
}

/// Integer matrix of multiplication by `mu` on the basis `(1, theta)`,
/// or `None` when `mu` does not stabilize the lattice.
fn multiplication_matrix(mu: &QuadInt, theta: &QuadInt) -> Result<Option<IntMatrix>> {
    let row1 = mu.decompose_in_basis(theta)?;
    let row2 = mu.checked_mul(theta)?.decompose_in_basis(theta)?;
    let ints = [&row1.0, &row1.1, &row2.0, &row2.1];
    if ints.iter().any(|r| !r.is_integer()) {
        return Ok(None);
    }
    Ok(Some(Matrix::from_rows(vec![
        vec![row1.0.to_integer(), row1.1.to_integer()],
        vec![row2.0.to_integer(), row2.1.to_integer()],
    ])))
}

/// "A is not a power of a positive integer matrix": any positive k-th root
/// would be the multiplication matrix of `epsilon^(m/k)`, contradicting the
/// minimality of m. Verified directly for k up to log2(tr A).
fn check_not_proper_power(
    a: &IntMatrix,
    eps: &QuadInt,
    m: i64,
    theta: &QuadInt,
) -> Result<()> {
    let tr = a.trace()?;
    let kmax = tr.bits();
    for k in 2..=kmax.max(2) {
        if k as i64 > m || m % k as i64 != 0 {
            continue;
        }
        let root_mu = eps.pow(m / k as i64)?;
        if let Some(b) = multiplication_matrix(&root_mu, theta)? {
            if b.entries().iter().all(|e| e.is_positive()) {
                return Err(Error::InvalidArgument(
                    "unit matrix is a proper power: minimality violated".into(),
                ));
            }
        }
    }
    Ok(())
}

fn verify_action(a: &IntMatrix, lambda: &QuadInt, theta: &QuadInt) -> Result<()> {
    let v = vec![QuadInt::one(), theta.clone()];
    let av = a.to_quad().matvec(&v)?;
    for (avi, vi) in av.iter().zip(&v) {
        if *avi != lambda.checked_mul(vi)? {
            return Err(Error::InvalidArgument(
                "unit matrix action verification failed".into(),
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Jacobi-Perron (heuristic mode, n >= 2; n = 1 reproduces the simple CF)
// ---------------------------------------------------------------------------

/// State of a Jacobi–Perron expansion.
#[derive(Clone, Debug)]
pub struct JpState {
    pub dimension: usize,
    pub precision: u32,
    /// Digit vectors, one per completed iteration.
    pub digits: Vec<Vec<BigInt>>,
    /// Working vectors after each iteration (index 0 = the input).
    states: Vec<Vec<Ball>>,
    /// `(start, length)` of the first certified digit-window repetition.
    /// Heuristic: a repeating window with proximal states is evidence of
    /// periodicity, not a proof.
    pub period_candidate: Option<(usize, usize)>,
    /// True when the iteration stopped because `max_iters` was reached
    /// without a candidate.
    pub exhausted: bool,
}

/// Classical Jacobi–Perron iteration on positive high-precision values:
/// `a_i = floor(alpha_i)`, then
/// `alpha' = ((alpha_2 - a_2)/(alpha_1 - a_1), ..., 1/(alpha_1 - a_1))`.
///
/// Errors with [`Error::PrecisionExhausted`] when a floor cannot be
/// certified or a divisor interval contains zero (rational degeneration).
pub fn jacobi_perron(theta: &[Ball], max_iters: usize, precision: u32) -> Result<JpState> {
    if precision < 64 {
        return Err(Error::PrecisionTooLow(64));
    }
    if theta.is_empty() {
        return Err(Error::InvalidArgument("empty input vector".into()));
    }
    if theta.iter().any(|b| !b.mid().sub(b.rad()).is_positive()) {
        return Err(Error::NotPositive);
    }
    let n = theta.len();
    let mut state = JpState {
        dimension: n,
        precision,
        digits: Vec::new(),
        states: vec![theta.to_vec()],
        period_candidate: None,
        exhausted: false,
    };
    let prec = precision;
    for _ in 0..max_iters {
        let current = state.states.last().unwrap().clone();
        let mut digit = Vec::with_capacity(n);
        let mut fracs = Vec::with_capacity(n);
        for coord in &current {
            let f = coord.floor_certified().ok_or(Error::PrecisionExhausted(
                "floor of a coordinate cannot be certified",
            ))?;
            fracs.push(coord.frac_given_floor(&f));
            digit.push(f);
        }
        let lead = &fracs[0];
        if lead.contains_zero() {
            return Err(Error::PrecisionExhausted(
                "fractional part contains zero (rational degeneration)",
            ));
        }
        let mut next = Vec::with_capacity(n);
        for j in 1..n {
            next.push(fracs[j].div(lead, prec)?);
        }
        next.push(Ball::one().div(lead, prec)?);
        state.digits.push(digit);
        state.states.push(next);
        if let Some(c) = find_period_candidate(&state) {
            state.period_candidate = Some(c);
            return Ok(state);
        }
    }
    state.exhausted = true;
    Ok(state)
}

/// Smallest `(start, len)` with `digits[start..start+len] ==
/// digits[start+len..start+2len]` and proximal working vectors at the two
/// window heads.
fn find_period_candidate(state: &JpState) -> Option<(usize, usize)> {
    let t = state.digits.len();
    let slack = BigFloat::power_of_two(-(state.precision as i64) / 3);
    for start in 0..t {
        for len in 1..=(t - start) / 2 {
            if state.digits[start..start + len] != state.digits[start + len..start + 2 * len] {
                continue;
            }
            let a = &state.states[start];
            let b = &state.states[start + len];
            if a.iter().zip(b).all(|(x, y)| x.proximal(y, &slack)) {
                return Some((start, len));
            }
        }
    }
    None
}

impl JpState {
    pub fn state_at(&self, index: usize) -> &[Ball] {
        &self.states[index]
    }
}

/// Product of the per-step digit matrices over one period window. The
/// per-step matrix of a digit vector `(a_1, ..., a_n)` is the companion-style
/// `(n+1) x (n+1)` matrix with first column `(a_n, ..., a_1, 1)` and the
/// shifted identity to its right; it is the one-step transfer of the
/// iteration in projective `(1, alpha)` coordinates, conjugated by the index
/// reversal so that the n = 1 case is the classical `(a, 1; 1, 0)`.
pub fn period_product(state: &JpState) -> Result<IntMatrix> {
    let (start, len) = state.period_candidate.ok_or(Error::NoPeriodCandidate)?;
    let n = state.dimension;
    let mut m = IntMatrix::identity(n + 1);
    for digit in &state.digits[start..start + len] {
        m = m.matmul(&jp_step_matrix(digit)).expect("square");
    }
    // Numeric postcondition: the reversed state vector
    // (alpha_n, ..., alpha_1, 1) at the period start spans the dominant
    // eigendirection of the product.
    verify_dominant_direction(&m, state.state_at(start), state.precision)?;
    Ok(m)
}

fn jp_step_matrix(digit: &[BigInt]) -> IntMatrix {
    let n = digit.len();
    let mut m = Matrix::<BigInt>::zero(n + 1, n + 1);
    for (i, a) in digit.iter().rev().enumerate() {
        m.set(i, 0, a.clone());
        m.set(i, i + 1, BigInt::one());
    }
    m.set(n, 0, BigInt::one());
    m
}

/// Checks that `M w ≈ lambda w` for `w = (alpha_n, ..., alpha_1, 1)` with a
/// shared quotient across coordinates, within the certified radii.
fn verify_dominant_direction(m: &IntMatrix, alpha: &[Ball], precision: u32) -> Result<()> {
    let prec = precision;
    let mut w: Vec<Ball> = alpha.iter().rev().cloned().collect();
    w.push(Ball::one());
    let n = w.len();
    let mut img = vec![Ball::zero(); n];
    for i in 0..n {
        let mut acc = Ball::zero();
        for j in 0..n {
            acc = acc.add(&Ball::from_bigint(m.at(i, j)).mul(&w[j], prec), prec);
        }
        img[i] = acc;
    }
    let q0 = img[0].div(&w[0], prec)?;
    let slack = BigFloat::power_of_two(-(precision as i64) / 4);
    for i in 1..n {
        let qi = img[i].div(&w[i], prec)?;
        if !qi.proximal(&q0, &slack) {
            return Err(Error::InvalidArgument(
                "period product eigendirection check failed".into(),
            ));
        }
    }
    Ok(())
}
