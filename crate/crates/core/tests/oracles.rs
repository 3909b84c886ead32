//! Independent-route oracles for the exact linear algebra and the analytic
//! kernels: minor-gcd invariant factors against the Smith elimination,
//! Bareiss determinants against Faddeev–LeVerrier characteristic
//! polynomials, character orthogonality, and a 6x6 normal-form recovery.

use nct_core::lfunc::dirichlet_character_group;
use nct_core::torus::{normal_form_numeric, SkewMatrix};
use nct_core::zlinalg::{smith_normal_form, Matrix};
use nct_core::{BigFloat, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// gcd of all k x k minors of m (0 for k beyond the rank support).
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let n = m.rows();
    let rows: Vec<Vec<usize>> = combinations(n, k);
    let cols: Vec<Vec<usize>> = combinations(m.cols(), k);
    let mut g = BigInt::zero();
    for r in &rows {
        for c in &cols {
            let sub = submatrix(m, r, c);
            g = g.gcd(&sub.det().unwrap());
        }
    }
    g
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> IntMatrix {
    let data: Vec<BigInt> = rows
        .iter()
        .flat_map(|&i| cols.iter().map(move |&j| m.at(i, j).clone()))
        .collect();
    Matrix::new(rows.len(), cols.len(), data)
}

#[test]
fn snf_matches_minor_gcd_characterization() {
    // d_1 d_2 ... d_k = gcd of all k x k minors: a classical description of
    // the invariant factors computed by a completely different route.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let data: Vec<BigInt> = (0..9).map(|_| BigInt::from(rng.gen_range(-12i64..=12))).collect();
        let m = Matrix::new(3, 3, data);
        let d = smith_normal_form(&m).diagonal();
        let mut product = BigInt::one();
        for k in 1..=3usize {
            product = &product * &d[k - 1];
            let g = minor_gcd(&m, k);
            assert_eq!(product, g, "k = {k} for {}", m.grammar_string());
        }
    }
}

#[test]
fn char_poly_matches_bareiss_determinants() {
    // det(kI - M) via fraction-free elimination agrees with the
    // Faddeev-LeVerrier characteristic polynomial at n+1 sample points.
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..40 {
        let n = rng.gen_range(2usize..=4);
        let data: Vec<BigInt> = (0..n * n)
            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
            .collect();
        let m = Matrix::new(n, n, data);
        let cp = m.char_poly().unwrap();
        for k in 0..=(n as i64) {
            let mut shifted = m.neg();
            for i in 0..n {
                let v = shifted.at(i, i).clone() + BigInt::from(k);
                shifted.set(i, i, v);
            }
            assert_eq!(cp.eval_bigint(&BigInt::from(k)), shifted.det().unwrap());
        }
    }
}

#[test]
fn character_orthogonality() {
    // Nontrivial characters sum to zero over a full period; the trivial
    // character sums to phi(N).
    for n in [3u64, 4, 5, 8, 12, 15, 16, 21, 24] {
        let phi = dirichlet_character_group(n).unwrap();
        for chi in &phi {
            // Sum chi(a) as an exact cyclotomic-free check: collect the
            // values as complex balls at 96 bits and sum.
            let mut re = BigFloat::zero();
            let mut im = BigFloat::zero();
            for a in 0..n {
                if let Some(w) = chi.at(a) {
                    let v = w.value(96).unwrap();
                    re = re.add(v.re.mid());
                    im = im.add(v.im.mid());
                }
            }
            let tol = BigFloat::power_of_two(-80);
            if chi.is_trivial() {
                let count = (0..n).filter(|&a| chi.at(a).is_some()).count();
                let err = re.sub(&BigFloat::from_i64(count as i64)).abs();
                assert!(err.cmp_value(&tol) == Ordering::Less);
            } else {
                assert!(
                    re.abs().cmp_value(&tol) == Ordering::Less
                        && im.abs().cmp_value(&tol) == Ordering::Less,
                    "character {} mod {n} does not sum to zero",
                    chi.index()
                );
            }
        }
    }
}

#[test]
fn normal_form_recovers_6x6_parameters() {
    // Theta_0 with parameters (3, 2, 1), conjugated by two rational Givens
    // rotations; the normal form must recover the parameters and certify
    // small exact residuals.
    let dim = 6;
    let mut theta0 = Matrix::<BigFloat>::zero(dim, dim);
    for (j, t) in [3i64, 2, 1].iter().enumerate() {
        theta0.set(2 * j, 2 * j + 1, BigFloat::from_i64(*t));
        theta0.set(2 * j + 1, 2 * j, BigFloat::from_i64(-*t));
    }
    let rot = |i: usize, j: usize, c_num: i64, s_num: i64, den: i64| {
        let mut r = Matrix::<BigFloat>::identity(dim);
        let c = BigFloat::from_ratio(&BigInt::from(c_num), &BigInt::from(den), 96);
        let s = BigFloat::from_ratio(&BigInt::from(s_num), &BigInt::from(den), 96);
        r.set(i, i, c.clone());
        r.set(i, j, s.clone());
        r.set(j, i, s.neg());
        r.set(j, j, c);
        r
    };
    // 3-4-5 and 5-12-13 rotations mix the blocks.
    let q1 = rot(0, 2, 3, 4, 5);
    let q2 = rot(1, 5, 5, 12, 13);
    let q = q1.matmul(&q2).unwrap();
    let conj = q.transpose().matmul(&theta0).unwrap().matmul(&q).unwrap();
    let sk = SkewMatrix::numeric(conj).unwrap();
    let nf = normal_form_numeric(&sk.to_numeric(192), 192).unwrap();
    let expect = [3i64, 2, 1];
    for (got, want) in nf.thetas.iter().zip(expect) {
        let err = got.sub(&BigFloat::from_i64(want)).abs();
        assert!(
            err.cmp_value(&BigFloat::power_of_two(-60)) == Ordering::Less,
            "recovered {} for {want}",
            got.to_decimal(25)
        );
    }
    assert!(nf.residual.cmp_value(&BigFloat::power_of_two(-60)) == Ordering::Less);
    assert!(nf.orthogonality.cmp_value(&BigFloat::power_of_two(-60)) == Ordering::Less);
}

#[test]
fn snf_stress_rectangular_and_degenerate() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..40 {
        let rows = rng.gen_range(1usize..=4);
        let cols = rng.gen_range(1usize..=4);
        // Mix in rank-deficient draws: sometimes duplicate a row.
        let mut data: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-8i64..=8))).collect())
            .collect();
        if rows >= 2 && rng.gen_bool(0.3) {
            data[rows - 1] = data[0].clone();
        }
        let m = Matrix::from_rows(data);
        let r = smith_normal_form(&m);
        assert_eq!(r.u.matmul(&m).unwrap().matmul(&r.v).unwrap(), r.s);
        assert!(r.u.det().unwrap().abs().is_one());
        assert!(r.v.det().unwrap().abs().is_one());
        let diag = r.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                assert!(!diag[i].is_zero() && (&diag[i + 1] % &diag[i]).is_zero());
            }
        }
    }
}
