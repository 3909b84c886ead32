//! Cross-module property suites: unit minimality against the Pell oracle,
//! group-action laws, Euler-product tail bounds, and the dual-route factor
//! identities.

use nct_core::cfrac::fundamental_unit;
use nct_core::exact::{QuadInt, RootOfUnity};
use nct_core::lfunc::{
    artin_pair_combine, build_lp, dirichlet_character_group, dirichlet_local_factor,
    euler_product, local_zeta, ExcludedPrimes, LocalFactor, UnitValue,
};
use nct_core::real::funcs;
use nct_core::torus::{apply_rs_action, check_so_nn, eq_boundary_element, moebius_boundary, SkewMatrix};
use nct_core::{BigFloat, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

fn q(a: i64, b: i64, c: i64, d: i64) -> QuadInt {
    QuadInt::new(a.into(), b.into(), c.into(), d.into()).unwrap()
}

/// Brute-force minimal unit of the maximal order of Q(sqrt(D)).
fn pell_oracle(d: u64) -> QuadInt {
    let dd = BigInt::from(d);
    let mut b = BigInt::one();
    loop {
        if d % 4 == 1 {
            for sign in [-4i64, 4] {
                let a2 = &dd * &b * &b + BigInt::from(sign);
                if a2.is_positive() {
                    let a = a2.sqrt();
                    if &a * &a == a2 {
                        return QuadInt::new(a, b.clone(), BigInt::from(2), dd.clone()).unwrap();
                    }
                }
            }
        } else {
            for sign in [-1i64, 1] {
                let a2 = &dd * &b * &b + BigInt::from(sign);
                if !a2.is_negative() {
                    let a = a2.sqrt();
                    if &a * &a == a2 {
                        return QuadInt::new(a, b.clone(), BigInt::one(), dd.clone()).unwrap();
                    }
                }
            }
        }
        b += 1;
    }
}

fn is_square_free(d: u64) -> bool {
    let mut m = d;
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

#[test]
fn fundamental_units_minimal_for_small_fields() {
    // Minimality over the whole desk range: the continued-fraction unit
    // agrees with the brute-force Pell minimum for every square-free D < 100.
    for d in 2u64..100 {
        if !is_square_free(d) {
            continue;
        }
        let theta = if d % 4 == 1 {
            q(1, 1, 2, d as i64)
        } else {
            QuadInt::sqrt(BigInt::from(d)).unwrap()
        };
        let unit = fundamental_unit(&theta).unwrap();
        assert_eq!(unit.epsilon, pell_oracle(d), "D = {d}");
        let norm = unit.epsilon.norm();
        assert!(norm.denom().is_one() && norm.numer().abs().is_one());
        assert_eq!(
            unit.epsilon.cmp_value(&QuadInt::one()).unwrap(),
            Ordering::Greater
        );
    }
}

#[test]
fn boundary_blocks_satisfy_split_identities() {
    // SL2 draws embed into the split-orthogonal group: 100 random samples.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 100 {
        let a = rng.gen_range(-9i64..=9);
        let b = rng.gen_range(-9i64..=9);
        let c = rng.gen_range(-9i64..=9);
        // solve ad - bc = 1 for d when possible
        if a == 0 {
            continue;
        }
        let num = 1 + b * c;
        if num % a != 0 {
            continue;
        }
        let d = num / a;
        let e = eq_boundary_element(a, b, c, d).unwrap();
        assert!(check_so_nn(&e.to_matrix()).unwrap());
        done += 1;
    }
}

#[test]
fn moebius_action_law_on_random_cases() {
    // Applying g then h equals applying h*g, on 50 exact samples.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let theta = q(0, 1, 1, 2);
    let mut done = 0;
    while done < 50 {
        let a = rng.gen_range(-6i64..=6);
        let b = rng.gen_range(-6i64..=6);
        let c = rng.gen_range(-6i64..=6);
        if a == 0 || (1 + b * c) % a != 0 {
            continue;
        }
        let d = (1 + b * c) / a;
        let g = IntMatrix::from_i64_rows(&[&[a, b], &[c, d]]);
        let e = rng.gen_range(-6i64..=6);
        let f = rng.gen_range(-6i64..=6);
        let gg = rng.gen_range(-6i64..=6);
        if e == 0 || (1 + f * gg) % e != 0 {
            continue;
        }
        let h = IntMatrix::from_i64_rows(&[&[e, f], &[gg, (1 + f * gg) / e]]);
        let step = match moebius_boundary(&g, &theta) {
            Ok(x) => x,
            Err(_) => continue, // pole
        };
        let two = match moebius_boundary(&h, &step) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let direct = moebius_boundary(&h.matmul(&g).unwrap(), &theta).unwrap();
        assert_eq!(two, direct);
        done += 1;
    }
}

#[test]
fn rs_action_matches_boundary_moebius() {
    // The 4x4 block action reduces to the scalar Möbius map on boundary
    // parameters, exactly.
    let theta = q(0, 1, 1, 2);
    for (a, b, c, d) in [(1i64, 1, 1, 2), (2, 1, 1, 1), (1, 0, 0, 1), (3, 2, 1, 1)] {
        if a * d - b * c != 1 {
            continue;
        }
        let g = eq_boundary_element(a, b, c, d).unwrap();
        let sk = SkewMatrix::boundary(&theta);
        let out = apply_rs_action(&g, &sk).unwrap();
        let expected = moebius_boundary(
            &IntMatrix::from_i64_rows(&[&[a, b], &[c, d]]),
            &theta,
        )
        .unwrap();
        match out {
            SkewMatrix::Exact(m) => assert_eq!(*m.at(0, 1), expected),
            _ => panic!("expected exact result"),
        }
    }
}

/// Direct series oracle for zeta(s) at integer s in f64.
fn zeta_series(s: u32, k_max: u64) -> f64 {
    let mut sum = 0.0;
    for k in (1..=k_max).rev() {
        sum += (k as f64).powi(-(s as i32));
    }
    sum
}

#[test]
fn euler_product_tail_bound_for_zeta() {
    // |prod_{p<=X} (1 - p^-s)^-1 - zeta(s)| <= sum_{k>X} k^-s: every integer
    // missing from the partial product has a prime factor > X.
    let x = 1000u64;
    let trivial = dirichlet_character_group(1).unwrap()[0].clone();
    for s_int in [2u32, 3] {
        let s = BigRational::from(BigInt::from(s_int));
        let eval = euler_product(
            |p| dirichlet_local_factor(&trivial, p),
            &s,
            x,
            &ExcludedPrimes::none(),
            128,
            1,
        )
        .unwrap();
        let zeta = zeta_series(s_int, 3_000_000);
        let got = eval.value.re.mid().to_f64();
        // crude integral tail bound: sum_{k>X} k^-s < X^(1-s)/(s-1)
        let tail = (x as f64).powi(1 - s_int as i32) / (s_int as f64 - 1.0)
            + 2.0 / 3_000_000.0_f64.powi(s_int as i32 - 1);
        assert!(
            (got - zeta).abs() < tail,
            "s = {s_int}: |{got} - {zeta}| >= {tail}"
        );
    }
}

#[test]
fn artin_pair_agreement_on_random_unit_values() {
    // Determinant route equals the split product within 1e-25 at 128 bits,
    // on 100 random roots of unity.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let s = BigRational::from(BigInt::from(2));
    let tol = BigFloat::from_ratio(
        &BigInt::one(),
        &BigInt::from(10u64).pow(25),
        96,
    );
    for _ in 0..100 {
        let n = rng.gen_range(1u64..=100);
        let k = rng.gen_range(0..n.max(1));
        let w = RootOfUnity::new(BigInt::from(n), BigInt::from(k)).unwrap();
        let p = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
        let pair = artin_pair_combine(&UnitValue::Exact(w), p, &s, 128).unwrap();
        let dist = pair.combined_factor.distance_upper(&pair.split_product);
        assert!(
            dist.cmp_value(&tol) == Ordering::Less,
            "distance {} exceeds 1e-25",
            dist.to_decimal(6)
        );
    }
}

#[test]
fn local_factor_consistency_for_higher_dimension() {
    // det(I - L_p z) has constant term 1 and degree n+1 for an n = 2 torus
    // matrix (3x3, positive, determinant 1).
    let a = IntMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 2, 2], &[1, 2, 3]]);
    assert!(a.det().unwrap().is_one());
    for p in [2u64, 3, 5, 7, 11] {
        let lp = build_lp(&a, p).unwrap();
        let factor = local_zeta(&lp).unwrap();
        match factor {
            LocalFactor::Poly { denominator, .. } => {
                assert_eq!(denominator.degree(), Some(3));
                assert!(denominator.coeff(0).is_one());
                // constant coefficient of char(A^p) equals det(A)^p = 1
                let ap = a.pow(p).unwrap();
                assert!(ap.det().unwrap().is_one());
            }
            _ => panic!("expected polynomial factor"),
        }
    }
}

#[test]
fn char_poly_constant_term_is_det_power() {
    // char(A^p) has constant term (-1)^dim det(A)^p, exactly.
    let a = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 1]]); // det = -1
    for p in [2u64, 3, 5, 7] {
        let ap = a.pow(p).unwrap();
        let cp = ap.char_poly().unwrap();
        let det_p = if p % 2 == 0 { 1i64 } else { -1 };
        // dim 2: char(0) = det(A^p)
        assert_eq!(cp.coeff(0), BigInt::from(det_p));
    }
}

#[test]
fn degenerate_pipeline_stays_exact_until_evaluation() {
    // n = 0: the root-of-unity chain is exact end to end; only the final
    // numeric evaluation rounds.
    let chars = dirichlet_character_group(5).unwrap();
    let chi = chars[1].clone();
    let p = 7u64;
    let factor = dirichlet_local_factor(&chi, p).unwrap();
    match &factor {
        LocalFactor::Unit { value: Some(w), .. } => {
            // chi(7) = chi(2) since 7 = 2 mod 5
            assert_eq!(Some(w.clone()), chi.at(2));
        }
        _ => panic!("expected a unit factor"),
    }
    // Numeric evaluation at z = 1/49 agrees with the direct formula.
    let z = nct_core::Ball::from_ratio(&BigInt::one(), &BigInt::from(49), 160);
    let denom = factor.denominator_at(&z, 160).unwrap();
    let w = chi.at(2).unwrap().value(160).unwrap();
    let expected_re = BigFloat::one().sub(&w.re.mid().mul(z.mid()));
    let err = denom.re.mid().sub(&expected_re).abs();
    assert!(err.cmp_value(&BigFloat::power_of_two(-140)) == Ordering::Less);
}

#[test]
fn pi_and_machin_cross_check() {
    // pi from the kernel matches 4*atan series folded differently:
    // pi/4 = 4 atan(1/5) - atan(1/239) (Machin) vs arcsin route via
    // sin(pi/6) = 1/2: sincos(pi/6) must give exactly half.
    let prec = 192;
    let pi = funcs::pi(prec);
    let sixth = pi.div_r(&BigFloat::from_i64(6), prec);
    let (s, _) = funcs::sincos(&sixth, prec);
    let half = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2), prec);
    let err = s.sub(&half).abs();
    assert!(err.cmp_value(&BigFloat::power_of_two(-(prec as i64) + 10)) == Ordering::Less);
}
