//! The large-sieve sum rewritten as a quadratic form in `X`.

use num_complex::Complex64;
use num_integer::Integer;
use serde_json::json;

use crate::error::{check_guard, Error, Result};
use crate::matrices::build_x;
use crate::numtheory::lcm_range;

use super::report::{Checker, CoefficientVector, VerificationReport};

pub const SIEVE_MAX_Q: u64 = 6;
const AGREEMENT_TOL: f64 = 1e-8;
const RAYLEIGH_SLACK: f64 = 1e-9;

/// `sum_{q <= Q} sum_{gcd(k,q)=1} |sum_n a_n e(kn/q)|^2`.
pub fn exponential_side(big_q: u64, a: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for q in 1..=big_q {
        for k in (1..=q).filter(|k| k.gcd(&q) == 1) {
            let s: Complex64 = a
                .iter()
                .enumerate()
                .map(|(i, &an)| {
                    let n = (i + 1) as u64;
                    let t = std::f64::consts::TAU * ((k * n) % q) as f64 / q as f64;
                    an * Complex64::from_polar(1.0, t)
                })
                .sum();
            total += s.norm_sqr();
        }
    }
    total
}

/// Compares the exponential-sum side with `a* X a` and checks that the
/// Rayleigh quotient lies in `[0, x]`. With `a` absent, entries are drawn
/// from the unit disk using `seed`.
pub fn large_sieve_identity(
    big_q: u64,
    a: Option<&CoefficientVector>,
    seed: u64,
) -> Result<VerificationReport> {
    if big_q == 0 {
        return Err(Error::domain("Q must be positive"));
    }
    check_guard("Q", big_q, SIEVE_MAX_Q)?;
    let x = lcm_range(big_q)? as usize;
    let generated;
    let a = match a {
        Some(a) => a,
        None => {
            generated = CoefficientVector::random(x, seed);
            &generated
        }
    };
    if a.len() != x {
        return Err(Error::domain(format!("coefficient vector has length {}, need x = {x}", a.len())));
    }
    let v = a.entries();
    let xm = build_x(big_q)?;
    let mut form = Complex64::new(0.0, 0.0);
    for m in 0..x {
        let mut row = Complex64::new(0.0, 0.0);
        for n in 0..x {
            row += v[n] * xm.get(m, n) as f64;
        }
        form += v[m].conj() * row;
    }
    let lhs = exponential_side(big_q, v);
    let l1: f64 = v.iter().map(|z| z.norm()).sum();
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let tol = AGREEMENT_TOL * l1 * l1;

    let mut ck = Checker::new("LargeSieve").param("Q", big_q).param("seed", seed);
    ck.note("x", x);
    ck.note("exponential_side", lhs);
    ck.note("quadratic_form", form.re);
    ck.note("tolerance", tol);
    let diff = (lhs - form.re).abs().max(form.im.abs());
    ck.compare("exponential side = a*Xa", lhs, form.re, diff <= tol);
    if norm2 > 0.0 {
        let rq = form.re / norm2;
        ck.note("rayleigh", rq);
        ck.check(rq >= -RAYLEIGH_SLACK && rq <= x as f64 + RAYLEIGH_SLACK, || {
            json!({"rayleigh": rq, "range": [0, x]})
        });
    }
    Ok(ck.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(v: &[(f64, f64)]) -> CoefficientVector {
        CoefficientVector::new(v.iter().map(|&(r, i)| Complex64::new(r, i)).collect()).unwrap()
    }

    #[test]
    fn unit_vector_at_q2() {
        let r = large_sieve_identity(2, Some(&cv(&[(1.0, 0.0), (0.0, 0.0)])), 0).unwrap();
        assert!(r.pass);
        assert!((r.detail("exponential_side").as_f64().unwrap() - 2.0).abs() < 1e-12);
        assert!((r.detail("rayleigh").as_f64().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn q1_is_square_of_sum() {
        let a = cv(&[(0.3, -0.7)]);
        let r = large_sieve_identity(1, Some(&a), 0).unwrap();
        assert!(r.pass);
        assert!((r.detail("quadratic_form").as_f64().unwrap() - 0.58).abs() < 1e-12);
    }

    #[test]
    fn seeded_random_q3() {
        let r = large_sieve_identity(3, None, 11).unwrap();
        assert!(r.pass, "{:?}", r.details);
        let again = large_sieve_identity(3, None, 11).unwrap();
        assert_eq!(r.details["exponential_side"], again.details["exponential_side"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(large_sieve_identity(2, Some(&cv(&[(1.0, 0.0)])), 0), Err(Error::Domain(_))));
        assert!(large_sieve_identity(7, None, 0).is_err());
        assert!(CoefficientVector::new(vec![Complex64::new(f64::NAN, 0.0)]).is_err());
    }
}
