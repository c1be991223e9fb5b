//! Rank over the rationals by elimination modulo random word-size primes,
//! certified against the trace of a scaled idempotent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_guard, Error, Result};
use crate::matrices::IntMatrix;

pub const RANK_MAX_DIM: u64 = 1024;
const PRIME_COUNT: usize = 3;
const PRIME_SEED: u64 = 0x7261_6e6b;

/// Deterministic Miller-Rabin for `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct random primes in `[2^30, 2^31)`, so products of two
/// residues fit in a `u64`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let cand = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime_u64(cand) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of `m` reduced modulo the prime `p < 2^31`.
pub fn modular_rank(m: &IntMatrix, p: u64) -> usize {
    assert!(p < (1 << 31));
    let n = m.dim();
    let pi = p as i64;
    let mut a: Vec<u64> = m.data().iter().map(|&v| v.rem_euclid(pi) as u64).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..n {
                a.swap(pivot * n + k, rank * n + k);
            }
        }
        let inv = inv_mod(a[rank * n + col], p);
        for k in col..n {
            a[rank * n + k] = a[rank * n + k] * inv % p;
        }
        let (top, bottom) = a.split_at_mut((rank + 1) * n);
        let pivot_row = &top[rank * n..];
        bottom.par_chunks_mut(n).for_each(|row| {
            let f = row[col];
            if f == 0 {
                return;
            }
            for k in col..n {
                row[k] = (row[k] + (p - f) * pivot_row[k]) % p;
            }
        });
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// `(prime, rank mod prime)` for each prime tried.
    pub modular: Vec<(u64, usize)>,
    /// `tr(M) / c`.
    pub trace_rank: i128,
}

/// Rank of a symmetric `m` with `m^2 = scale * m`.
///
/// Elimination modulo a prime can only under-count the rational rank, so
/// the maximum over three primes is taken; the result must then equal
/// `tr(m) / scale`, which is the rank of any such scaled idempotent.
pub fn rank_exact(m: &IntMatrix, scale: i64) -> Result<RankCertificate> {
    check_guard("rank dimension", m.dim() as u64, RANK_MAX_DIM)?;
    if scale == 0 {
        return Err(Error::domain("scale must be nonzero"));
    }
    let primes = random_primes(PRIME_COUNT, PRIME_SEED ^ m.dim() as u64);
    let modular: Vec<(u64, usize)> = primes.par_iter().map(|&p| (p, modular_rank(m, p))).collect();
    let rank = modular.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let tr = m.trace();
    let c = i128::from(scale);
    if tr % c != 0 {
        return Err(Error::RankMismatch { modular: rank, trace: format!("{tr}/{scale}") });
    }
    let trace_rank = tr / c;
    if trace_rank != rank as i128 {
        return Err(Error::RankMismatch { modular: rank, trace: trace_rank.to_string() });
    }
    Ok(RankCertificate { rank, modular, trace_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{build_aq, build_x};

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(1));
        let ps = random_primes(3, 42);
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p >= 1 << 30 && p < 1 << 31));
        assert_eq!(ps, random_primes(3, 42));
    }

    #[test]
    fn rank_small_examples() {
        assert_eq!(rank_exact(&build_aq(4).unwrap(), 4).unwrap().rank, 2);
        assert_eq!(rank_exact(&build_x(3).unwrap(), 6).unwrap().rank, 4);
        assert_eq!(rank_exact(&build_aq(1).unwrap(), 1).unwrap().rank, 1);
    }

    #[test]
    fn modular_rank_sees_dependence() {
        let m = IntMatrix::new(3, vec![1, 2, 3, 2, 4, 6, 1, 0, 1]).unwrap();
        assert_eq!(modular_rank(&m, 1_000_000_007), 2);
        // mod 2 the rank collapses further; the max over primes guards against this
        let m2 = IntMatrix::new(2, vec![2, 0, 0, 2]).unwrap();
        assert_eq!(modular_rank(&m2, 2), 0);
        assert_eq!(modular_rank(&m2, 1_000_000_007), 2);
    }

    #[test]
    fn certification_rejects_wrong_scale() {
        let a = build_aq(6).unwrap();
        // tr(A_6) = 12, rank 2; claiming scale 3 gives trace rank 4.
        assert!(matches!(rank_exact(&a, 3), Err(Error::RankMismatch { .. })));
        assert!(matches!(rank_exact(&a, 5), Err(Error::RankMismatch { .. })));
    }
}
