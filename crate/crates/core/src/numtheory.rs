//! Elementary multiplicative number theory on small moduli.
//!
//! Everything here is a pure function of its arguments. Moduli are `u64`;
//! the arguments of exponential sums are signed and are reduced with
//! [`reduce_mod`].

use num_integer::Integer;
use serde::Serialize;

use crate::error::{check_guard, Error, Result};

/// Largest `Q` accepted by [`lcm_range`]; `lcm(1..=40)` still fits in 63 bits.
pub const LCM_RANGE_MAX: u64 = 40;

/// Prime factorization as `(prime, exponent)` pairs in ascending prime order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Product of `p^e`; reconstructs the factored number.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factorize 0"));
    }
    if n > i64::MAX as u64 {
        return Err(Error::domain(format!("{n} exceeds 2^63 - 1")));
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(Factorization(out))
}

fn factor_pos(n: u64) -> Factorization {
    assert!(n >= 1, "arithmetic functions are defined for n >= 1");
    factorize(n).expect("n >= 1 within range")
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factor_pos(n)
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn mobius(n: u64) -> i64 {
    let f = factor_pos(n);
    if !f.is_squarefree() {
        0
    } else if f.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of divisors.
pub fn tau(n: u64) -> u64 {
    factor_pos(n)
        .pairs()
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for &(p, e) in factor_pos(n).pairs() {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Least nonnegative residue of `n` modulo `q`.
#[inline]
pub fn reduce_mod(n: i64, q: u64) -> u64 {
    (i128::from(n).rem_euclid(i128::from(q))) as u64
}

/// gcd with the convention `gcd(0, q) = q`.
pub fn gcd_signed(n: i64, q: u64) -> u64 {
    reduce_mod(n, q).gcd(&q)
}

/// Inverse of `k` modulo `q`, as a residue in `[1, q]`.
///
/// Modulo 1 every integer is congruent to 1, so the answer there is 1.
pub fn mod_inverse(k: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if q == 1 {
        return Ok(1);
    }
    let a = i128::from(reduce_mod(k, q));
    let m = i128::from(q);
    let ext = a.extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { k, q });
    }
    Ok(ext.x.rem_euclid(m) as u64)
}

/// `lcm(1, 2, ..., upto)`.
pub fn lcm_range(upto: u64) -> Result<u64> {
    if upto == 0 {
        return Err(Error::domain("lcm_range needs Q >= 1"));
    }
    check_guard("Q", upto, LCM_RANGE_MAX)?;
    Ok((1..=upto).fold(1u64, |acc, k| acc.lcm(&k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiTildeMethod {
    /// Count the units `k` with `k^2 = -1 (mod q)`.
    Direct,
    /// Multiply the prime-power values `{2: 1, 2^e: 0, p = 3 (4): 0, p = 1 (4): 2}`.
    Multiplicative,
}

/// Number of units `k` modulo `q` with `k + k^{-1} = 0`, equivalently `k^2 = -1`.
pub fn phi_tilde(q: u64, method: PhiTildeMethod) -> u64 {
    assert!(q >= 1, "phi_tilde is defined for q >= 1");
    match method {
        PhiTildeMethod::Direct => {
            let m = u128::from(q);
            (1..=q)
                .filter(|&k| {
                    let k = u128::from(k);
                    k.gcd(&m) == 1 && (k * k + 1) % m == 0
                })
                .count() as u64
        }
        PhiTildeMethod::Multiplicative => factor_pos(q)
            .pairs()
            .iter()
            .map(|&(p, e)| match (p, e) {
                (2, 1) => 1,
                (2, _) => 0,
                (p, _) if p % 4 == 3 => 0,
                _ => 2,
            })
            .product(),
    }
}

/// Prime-power table evaluation; the cheap default.
pub fn phi_tilde_fast(q: u64) -> u64 {
    phi_tilde(q, PhiTildeMethod::Multiplicative)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TotientSummary {
    pub q: u64,
    pub phi: u64,
    pub phi_tilde: u64,
    pub tau: u64,
}

pub fn totient_summary(q: u64) -> TotientSummary {
    TotientSummary {
        q,
        phi: euler_phi(q),
        phi_tilde: phi_tilde_fast(q),
        tau: tau(q),
    }
}

/// Partial sums `(sum phi(q), sum phi_tilde(q))` over `1 <= q <= upto`.
pub fn totient_sums(upto: u64) -> (u64, u64) {
    (1..=upto).fold((0, 0), |(a, b), q| (a + euler_phi(q), b + phi_tilde_fast(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while n > 1 {
            while n % d == 0 {
                match out.last_mut() {
                    Some((p, e)) if *p == d => *e += 1,
                    _ => out.push((d, 1)),
                }
                n /= d;
            }
            d += 1;
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().pairs().is_empty());
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(840).unwrap().pairs(), trial_oracle(840).as_slice());
        assert_eq!(factorize(840).unwrap().pairs(), &[(2, 3), (3, 1), (5, 1), (7, 1)]);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        let big = 1_000_000_007u64;
        assert_eq!(factorize(big).unwrap().pairs(), &[(big, 1)]);
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..3000 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert_eq!(f.pairs(), trial_oracle(n).as_slice());
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(tau(1), 1);
        assert_eq!(tau(6), 4);
        assert_eq!(tau(840), 32);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn phi_and_tau_match_counting() {
        for n in 1..=1000u64 {
            let coprime = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            let divs = (1..=n).filter(|d| n % d == 0).count() as u64;
            assert_eq!(euler_phi(n), coprime, "phi({n})");
            assert_eq!(tau(n), divs, "tau({n})");
            assert_eq!(divisors(n).len() as u64, divs);
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 1).unwrap(), 1);
        assert_eq!(mod_inverse(4, 9).unwrap(), 7);
        assert_eq!(mod_inverse(-1, 5).unwrap(), 4);
        assert!(matches!(mod_inverse(6, 9), Err(Error::NotInvertible { k: 6, q: 9 })));
    }

    #[test]
    fn mod_inverse_round_trips() {
        for q in 1..=200u64 {
            for k in 1..=q {
                if k.gcd(&q) != 1 {
                    continue;
                }
                let inv = mod_inverse(k as i64, q).unwrap();
                assert!((1..=q).contains(&inv));
                assert_eq!((inv * k) % q, 1 % q);
                assert_eq!(mod_inverse(inv as i64, q).unwrap() % q, k % q);
            }
        }
    }

    #[test]
    fn lcm_range_examples_and_guard() {
        assert_eq!(lcm_range(1).unwrap(), 1);
        assert_eq!(lcm_range(3).unwrap(), 6);
        assert_eq!(lcm_range(8).unwrap(), 840);
        assert_eq!(lcm_range(40).unwrap(), 5_342_931_457_063_200);
        assert!(matches!(lcm_range(41), Err(Error::Guard { .. })));
        for big_q in 1..=40 {
            let l = lcm_range(big_q).unwrap();
            assert!((1..=big_q).all(|q| l % q == 0));
        }
    }

    #[test]
    fn phi_tilde_examples() {
        for method in [PhiTildeMethod::Direct, PhiTildeMethod::Multiplicative] {
            assert_eq!(phi_tilde(1, method), 1);
            assert_eq!(phi_tilde(5, method), 2);
            assert_eq!(phi_tilde(4, method), 0);
            assert_eq!(phi_tilde(10, method), 2);
        }
    }

    #[test]
    fn phi_tilde_support() {
        for q in 1..=5000u64 {
            let f = factorize(q).unwrap();
            let expected = q % 4 != 0 && f.primes().all(|p| p % 4 != 3);
            assert_eq!(phi_tilde_fast(q) > 0, expected, "q = {q}");
        }
    }

    #[test]
    fn phi_tilde_parity() {
        for q in 3..=2000u64 {
            assert_eq!(euler_phi(q) % 2, phi_tilde_fast(q) % 2, "q = {q}");
            assert!(phi_tilde_fast(q) <= euler_phi(q));
        }
    }

    #[test]
    fn totient_sums_examples() {
        assert_eq!(totient_sums(1), (1, 1));
        assert_eq!(totient_sums(3), (4, 2));
        let phi: u64 = (1..=8u64).map(|q| (1..=q).filter(|k| k.gcd(&q) == 1).count() as u64).sum();
        let tilde: u64 = (1..=8u64)
            .map(|q| (1..=q).filter(|&k| k.gcd(&q) == 1 && (k * k + 1) % q == 0).count() as u64)
            .sum();
        assert_eq!(totient_sums(8), (phi, tilde));
        assert_eq!(totient_sums(8), (22, 4));
    }
}
