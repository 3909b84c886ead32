//! Dirichlet characters mod N as exact root-of-unity tables.
//!
//! The unit group (Z/NZ)^* is decomposed into cyclic components: one per odd
//! prime power (a primitive root lifted from the residue field) and the
//! {±1} x <5> pair for the 2-part. Characters are indexed by exponent
//! tuples on the component generators in mixed-radix order, so `index 0` is
//! the trivial character and the ordering is deterministic.

use crate::error::{Error, Result};
use crate::exact::RootOfUnity;
use crate::primes::mod_pow;
use num_bigint::BigInt;

/// A Dirichlet character mod N: completely multiplicative on units,
/// zero elsewhere, with exact root-of-unity values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: usize,
    /// Value table on residues 0..N-1; `None` encodes 0.
    values: Vec<Option<RootOfUnity>>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Position in the deterministic enumeration; 0 is trivial.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// `chi(m)`, extended by zero off the units. `None` encodes 0.
    pub fn at(&self, m: u64) -> Option<RootOfUnity> {
        if self.modulus == 1 {
            return Some(RootOfUnity::one());
        }
        self.values[(m % self.modulus) as usize].clone()
    }

    pub fn at_signed(&self, m: &BigInt) -> Option<RootOfUnity> {
        use num_integer::Integer;
        let r = m.mod_floor(&BigInt::from(self.modulus));
        self.at(u64::try_from(&r).expect("reduced residue"))
    }
}

/// One cyclic component of (Z/NZ)^*.
struct CyclicComponent {
    /// Prime-power modulus of the component.
    modulus: u64,
    generator: u64,
    order: u64,
    kind: ComponentKind,
}

enum ComponentKind {
    /// Generated by powers of the stated generator.
    Cyclic,
    /// The {±1} factor of the 2-part for 2^e, e >= 3: log is 0 on the
    /// coset <5>, 1 on -<5>.
    MinusOnePart,
}

/// All phi(N) characters mod N, exact, deterministically ordered.
pub fn dirichlet_character_group(n: u64) -> Result<Vec<DirichletCharacter>> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    if n == 1 {
        return Ok(vec![DirichletCharacter {
            modulus: 1,
            index: 0,
            values: vec![Some(RootOfUnity::one())],
        }]);
    }
    let components = unit_group_components(n);
    // Discrete logs of every unit with respect to each component generator.
    let phi: u64 = components.iter().map(|c| c.order).product();
    let mut logs: Vec<Option<Vec<u64>>> = vec![None; n as usize];
    for a in 0..n {
        if gcd(a, n) != 1 {
            continue;
        }
        let mut tuple = Vec::with_capacity(components.len());
        for comp in &components {
            let residue = a % comp.modulus;
            tuple.push(discrete_log(residue, comp));
        }
        logs[a as usize] = Some(tuple);
    }
    // Mixed-radix exponent tuples, last component fastest.
    let orders: Vec<u64> = components.iter().map(|c| c.order).collect();
    let mut characters = Vec::with_capacity(phi as usize);
    for index in 0..phi {
        let exponents = unrank(index, &orders);
        let mut values = vec![None; n as usize];
        for a in 0..n {
            if let Some(tuple) = &logs[a as usize] {
                let mut z = RootOfUnity::one();
                for ((e, l), ord) in exponents.iter().zip(tuple).zip(&orders) {
                    let w = RootOfUnity::new(BigInt::from(*ord), BigInt::from(e * l))?;
                    z = z.mul(&w);
                }
                values[a as usize] = Some(z);
            }
        }
        characters.push(DirichletCharacter {
            modulus: n,
            index: index as usize,
            values,
        });
    }
    Ok(characters)
}

fn unrank(mut index: u64, orders: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; orders.len()];
    for i in (0..orders.len()).rev() {
        out[i] = index % orders[i];
        index /= orders[i];
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn unit_group_components(n: u64) -> Vec<CyclicComponent> {
    let mut components = Vec::new();
    let mut m = n;
    // 2-part first.
    let mut e2 = 0u32;
    while m % 2 == 0 {
        m /= 2;
        e2 += 1;
    }
    match e2 {
        0 | 1 => {}
        2 => components.push(CyclicComponent {
            modulus: 4,
            generator: 3,
            order: 2,
            kind: ComponentKind::Cyclic,
        }),
        _ => {
            let q = 1u64 << e2;
            components.push(CyclicComponent {
                modulus: q,
                generator: q - 1, // -1
                order: 2,
                kind: ComponentKind::MinusOnePart,
            });
            components.push(CyclicComponent {
                modulus: q,
                generator: 5,
                order: q / 4,
                kind: ComponentKind::Cyclic,
            });
        }
    }
    // Odd prime powers ascending.
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            let mut q = 1u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                q *= p;
                e += 1;
            }
            components.push(odd_component(p, q, e));
        }
        p += 2;
    }
    if m > 1 {
        components.push(odd_component(m, m, 1));
    }
    components
}

fn odd_component(p: u64, q: u64, e: u32) -> CyclicComponent {
    let g = primitive_root_mod_p(p);
    // Lift to a primitive root mod p^e: g works unless g^(p-1) = 1 mod p^2.
    let generator = if e == 1 {
        g
    } else if mod_pow(g, p - 1, p * p) != 1 {
        g
    } else {
        g + p
    };
    CyclicComponent {
        modulus: q,
        generator,
        order: q / p * (p - 1),
        kind: ComponentKind::Cyclic,
    }
}

fn primitive_root_mod_p(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors = distinct_prime_factors(order);
    'outer: for g in 2..p {
        for &f in &factors {
            if mod_pow(g, order / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Discrete log of a unit in one cyclic component, by enumeration
/// (component orders are desk-scale).
fn discrete_log(residue: u64, comp: &CyclicComponent) -> u64 {
    if matches!(comp.kind, ComponentKind::MinusOnePart) {
        // Residues are ±5^k; the log is 0 on the <5> coset, else 1.
        let mut x = 1u64;
        for _ in 0..comp.modulus / 4 {
            if x == residue {
                return 0;
            }
            x = (x * 5) % comp.modulus;
        }
        return 1;
    }
    let mut x = 1u64;
    for k in 0..comp.order {
        if x == residue {
            return k;
        }
        x = ((x as u128 * comp.generator as u128) % comp.modulus as u128) as u64;
    }
    // For the 2-part <5>-component the residue may be -5^k; fold the sign.
    let neg = comp.modulus - residue;
    let mut x = 1u64;
    for k in 0..comp.order {
        if x == neg {
            return k;
        }
        x = ((x as u128 * comp.generator as u128) % comp.modulus as u128) as u64;
    }
    unreachable!("unit not generated by the component decomposition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_4_characters() {
        let chars = dirichlet_character_group(4).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[0].at(3), Some(RootOfUnity::one()));
        assert_eq!(chars[1].at(3), Some(RootOfUnity::minus_one()));
        assert_eq!(chars[1].at(2), None);
        assert_eq!(chars[1].at(1), Some(RootOfUnity::one()));
    }

    #[test]
    fn mod_1_trivial_everywhere() {
        let chars = dirichlet_character_group(1).unwrap();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].at(0), Some(RootOfUnity::one()));
        assert_eq!(chars[0].at(17), Some(RootOfUnity::one()));
    }

    #[test]
    fn mod_5_has_order_4_generator() {
        let chars = dirichlet_character_group(5).unwrap();
        assert_eq!(chars.len(), 4);
        // 2 generates (Z/5)^*; some character sends it to i.
        let i = RootOfUnity::new(BigInt::from(4), BigInt::from(1)).unwrap();
        assert!(chars.iter().any(|c| c.at(2) == Some(i.clone())));
    }

    #[test]
    fn characters_are_multiplicative() {
        for n in [4u64, 5, 8, 12, 15, 16, 21] {
            for chi in dirichlet_character_group(n).unwrap() {
                for a in 0..n {
                    for b in 0..n {
                        let lhs = chi.at((a * b) % n);
                        let rhs = match (chi.at(a), chi.at(b)) {
                            (Some(x), Some(y)) => Some(x.mul(&y)),
                            _ => None,
                        };
                        assert_eq!(lhs, rhs, "chi mod {n} at {a}*{b}");
                    }
                }
                assert_eq!(chi.at(1), Some(RootOfUnity::one()));
            }
        }
    }

    #[test]
    fn group_sizes_match_phi() {
        let phi = |n: u64| (1..=n).filter(|&a| gcd(a, n) == 1).count();
        for n in [2u64, 3, 4, 6, 8, 9, 12, 16, 24, 30] {
            assert_eq!(dirichlet_character_group(n).unwrap().len(), phi(n), "n = {n}");
        }
    }
}
