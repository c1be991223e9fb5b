//! Ramanujan and Kloosterman sums.
//!
//! Both sums are evaluated by their defining sum over units in
//! `Z[zeta_q]`; that exact element is the source of truth. The Hölder
//! closed form for `c_q(n)` is kept only as an independent cross-check.

use num_integer::Integer;
use serde::Serialize;

use crate::cyclotomic::CycloElem;
use crate::error::{check_guard, Error, Result};
use crate::numtheory::{euler_phi, gcd_signed, mobius, mod_inverse, reduce_mod, tau};

/// Units `k` in `[1, q]` paired with their inverses `k*` in `[1, q]`.
pub fn unit_pairs(q: u64) -> Vec<(u64, u64)> {
    assert!(q >= 1);
    (1..=q)
        .filter(|k| k.gcd(&q) == 1)
        .map(|k| (k, mod_inverse(k as i64, q).expect("k is a unit")))
        .collect()
}

/// `c_q(n)` as an element of `Z[zeta_q]`, before certification.
pub fn ramanujan_elem(q: u64, n: i64) -> CycloElem {
    let r = reduce_mod(n, q);
    CycloElem::sum_of_roots(
        q as usize,
        (1..=q).filter(|k| k.gcd(&q) == 1).map(|k| (k * r) % q),
    )
}

/// Ramanujan sum `c_q(n)`, certified to be a rational integer.
pub fn ramanujan(q: u64, n: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    ramanujan_elem(q, n).as_i64().ok_or_else(|| {
        Error::Arithmetic(format!("c_{q}({n}) did not reduce to a rational integer"))
    })
}

/// `c_q(0), c_q(1), ..., c_q(q - 1)`.
pub fn ramanujan_table(q: u64) -> Result<Vec<i64>> {
    (0..q as i64).map(|n| ramanujan(q, n)).collect()
}

/// Closed form `mu(q/g) phi(q) / phi(q/g)` with `g = gcd(n, q)`; oracle only.
pub fn ramanujan_holder(q: u64, n: i64) -> i64 {
    let g = gcd_signed(n, q);
    let t = q / g;
    mobius(t) * (euler_phi(q) / euler_phi(t)) as i64
}

#[derive(Clone, Debug, PartialEq)]
pub struct KloostermanValue {
    pub q: u64,
    pub m: i64,
    pub n: i64,
    pub exact: CycloElem,
    /// Real part of the float rendering of `exact`.
    pub approx: f64,
}

/// `S(m, n; q)` as an element of `Z[zeta_q]`.
pub fn kloosterman_elem(q: u64, m: i64, n: i64) -> CycloElem {
    let (mr, nr) = (reduce_mod(m, q), reduce_mod(n, q));
    CycloElem::sum_of_roots(
        q as usize,
        unit_pairs(q)
            .into_iter()
            .map(|(k, kinv)| (mr * k + nr * kinv) % q),
    )
}

/// Kloosterman sum `S(m, n; q)`, exact and as a double.
pub fn kloosterman(q: u64, m: i64, n: i64) -> Result<KloostermanValue> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let exact = kloosterman_elem(q, m, n);
    let approx = exact.to_complex().re;
    Ok(KloostermanValue { q, m, n, exact, approx })
}

pub const WEIL_MAX_Q: u64 = 200;
const WEIL_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub q: u64,
    pub pass: bool,
    /// max over pairs of `|S(m,n;q)| / (tau(q) gcd(m,n,q) sqrt q)`.
    pub worst_ratio: f64,
    pub max_abs: f64,
    pub pairs: u64,
    pub violations: Vec<(u64, u64)>,
}

/// Checks `|S(m,n;q)| <= tau(q) gcd(m,n,q) sqrt(q)` for all `1 <= m, n <= q`.
pub fn weil_check(q: u64) -> Result<WeilReport> {
    if q == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    check_guard("q", q, WEIL_MAX_Q)?;
    let pairs = unit_pairs(q);
    let t = tau(q) as f64;
    let sq = (q as f64).sqrt();
    let mut worst = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut violations = Vec::new();
    for m in 1..=q {
        for n in 1..=q {
            let s = CycloElem::sum_of_roots(
                q as usize,
                pairs.iter().map(|&(k, kinv)| (m * k + n * kinv) % q),
            )
            .to_complex()
            .re
            .abs();
            let bound = t * (m.gcd(&n).gcd(&q) as f64) * sq;
            worst = worst.max(s / bound);
            max_abs = max_abs.max(s);
            if s > bound + WEIL_SLACK {
                violations.push((m, n));
            }
        }
    }
    Ok(WeilReport {
        q,
        pass: violations.is_empty(),
        worst_ratio: worst,
        max_abs,
        pairs: q * q,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::Int;

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan(5, 0).unwrap(), 4);
        assert_eq!(ramanujan(2, 1).unwrap(), -1);
        assert_eq!(ramanujan(6, 2).unwrap(), -1);
        assert_eq!(ramanujan(1, 17).unwrap(), 1);
        assert!(ramanujan(0, 1).is_err());
    }

    #[test]
    fn holder_examples() {
        assert_eq!(ramanujan_holder(7, 0), 6);
        assert_eq!(ramanujan_holder(4, 2), -2);
        assert_eq!(ramanujan_holder(9, 3), -3);
        assert_eq!(ramanujan_holder(6, 2), -1);
    }

    #[test]
    fn definition_matches_holder_and_symmetries() {
        for q in 1..=120u64 {
            let qi = q as i64;
            for n in -qi..=2 * qi {
                let v = ramanujan(q, n).unwrap();
                assert_eq!(v, ramanujan_holder(q, n), "c_{q}({n})");
                assert_eq!(v, ramanujan(q, n.rem_euclid(qi)).unwrap());
                assert_eq!(v, ramanujan(q, -n).unwrap());
            }
        }
    }

    #[test]
    fn full_period_sums_vanish() {
        for q in 2..=200u64 {
            let s: i64 = (1..=q as i64).map(|k| ramanujan(q, k).unwrap()).sum();
            assert_eq!(s, 0, "q = {q}");
        }
        // q = 1 is the lone exception: c_1 = 1.
        assert_eq!(ramanujan(1, 1).unwrap(), 1);
    }

    #[test]
    fn kloosterman_examples() {
        assert_eq!(kloosterman(2, 1, 1).unwrap().exact.as_i64(), Some(1));
        assert_eq!(kloosterman(3, 1, 2).unwrap().exact.as_i64(), Some(2));
        assert_eq!(kloosterman(5, 5, 5).unwrap().exact.as_i64(), Some(4));
        let s = kloosterman(5, 1, 1).unwrap();
        assert!((s.approx - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(s.exact.as_integer(), None);
    }

    #[test]
    fn kloosterman_real_symmetric_periodic() {
        for q in 1..=40u64 {
            let qi = q as i64;
            for m in 1..=qi {
                for n in m..=qi {
                    let a = kloosterman_elem(q, m, n);
                    assert!(a.is_real(), "S({m},{n};{q}) not real");
                    assert!(a.eq_exact(&kloosterman_elem(q, n, m)).unwrap());
                    assert!(a.eq_exact(&kloosterman_elem(q, m - qi, n + 2 * qi)).unwrap());
                }
            }
        }
    }

    #[test]
    fn kloosterman_reduces_to_ramanujan() {
        for q in 1..=60u64 {
            for m in 0..=q as i64 {
                let c = Int::from(ramanujan(q, m).unwrap());
                assert_eq!(kloosterman_elem(q, m, 0).as_integer(), Some(c.clone()));
                assert_eq!(kloosterman_elem(q, 0, m).as_integer(), Some(c));
            }
        }
    }

    #[test]
    fn weil_examples() {
        let r5 = weil_check(5).unwrap();
        assert!(r5.pass);
        assert_eq!(r5.pairs, 25);
        assert!((r5.max_abs - 4.0).abs() < 1e-12);
        let r1 = weil_check(1).unwrap();
        assert!(r1.pass);
        assert!((r1.max_abs - 1.0).abs() < 1e-15);
        assert!(weil_check(12).unwrap().pass);
        assert!(matches!(weil_check(201), Err(Error::Guard { .. })));
    }
}
