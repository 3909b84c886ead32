//! Shared fixtures for the kernel benchmarks.

use nct_core::exact::QuadInt;
use nct_core::zlinalg::Matrix;
use nct_core::IntMatrix;
use num_bigint::BigInt;

pub fn sqrt2() -> QuadInt {
    QuadInt::sqrt(BigInt::from(2)).unwrap()
}

pub fn sqrt2_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[1, 1], &[2, 1]])
}

/// Deterministic pseudo-random integer matrix (linear congruential walk).
pub fn lcg_matrix(n: usize, seed: u64, span: i64) -> IntMatrix {
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) as i64 % (2 * span + 1)) - span
    };
    let data: Vec<BigInt> = (0..n * n).map(|_| BigInt::from(next())).collect();
    Matrix::new(n, n, data)
}
