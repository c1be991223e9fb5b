//! Root-of-unity eigenvectors of the circulant families and the eigenvector
//! pairs of `B_q`.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::cyclotomic::{mul_acc, CycloElem};
use crate::error::{check_guard, Error, Result};
use crate::int::Int;
use crate::matrices::{build_aq, build_bq, build_x, CycloMatrix, IntMatrix, MatrixKind};
use crate::numtheory::{euler_phi, mod_inverse, phi_tilde_fast, totient_sums};
use crate::spectral::{Checker, VerificationReport};

pub const CIRCULANT_MAX_Q: u64 = 24;
pub const CIRCULANT_MAX_BIG_Q: u64 = 5;
pub const KLOOSTERMAN_VEC_MAX_Q: u64 = 24;

/// `(w^offset, w^{offset+1}, ..., w^{offset+dim-1})` with `w = zeta_order^index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootVector {
    pub dim: usize,
    pub order: u64,
    pub index: u64,
    /// 0 for the circulant vectors `v_j`, 1 for the Kloosterman vectors `u_j`.
    pub offset: u64,
}

impl RootVector {
    /// Exponent of `zeta_order` at 0-based position `pos`.
    pub fn exponent(&self, pos: usize) -> u64 {
        (self.index % self.order) * ((pos as u64 + self.offset) % self.order) % self.order
    }

    pub fn entry(&self, pos: usize) -> CycloElem {
        CycloElem::root_power(self.order, self.exponent(pos) as i64)
    }

    pub fn entries(&self) -> Vec<CycloElem> {
        (0..self.dim).map(|p| self.entry(p)).collect()
    }
}

/// `v_j = (1, w, ..., w^{d-1})`, `w = zeta_d^j`.
pub fn circulant_eigvec(d: usize, j: u64) -> Result<RootVector> {
    if d == 0 || j == 0 || j > d as u64 {
        return Err(Error::domain(format!("need 1 <= j <= d, got d={d}, j={j}")));
    }
    Ok(RootVector { dim: d, order: d as u64, index: j, offset: 0 })
}

/// `u_j = (w, w^2, ..., w^q)`, `w = zeta_q^j`.
pub fn kloosterman_eigvec(q: u64, j: u64) -> Result<RootVector> {
    if q == 0 || j == 0 || j > q {
        return Err(Error::domain(format!("need 1 <= j <= q, got q={q}, j={j}")));
    }
    Ok(RootVector { dim: q as usize, order: q, index: j, offset: 1 })
}

fn int_times_vec(m: &IntMatrix, v: &RootVector) -> Vec<CycloElem> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            let mut buf = vec![Int::ZERO; v.order as usize];
            for (k, &a) in m.row(i).iter().enumerate() {
                if a != 0 {
                    buf[v.exponent(k) as usize].add_scaled(&Int::ONE, a);
                }
            }
            CycloElem::drain_buffer(&mut buf)
        })
        .collect()
}

fn cyclo_times_vec(m: &CycloMatrix, v: &RootVector) -> Vec<CycloElem> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            let mut buf = vec![Int::ZERO; m.order()];
            for k in 0..n {
                let e = m.get(i, k);
                mul_acc(&mut buf, e.terms(), &[(v.exponent(k) as u32, Int::ONE)], 0);
            }
            CycloElem::drain_buffer(&mut buf)
        })
        .collect()
}

/// `lhs == lambda * v` entrywise; returns the first failing position.
fn check_eigen(lhs: &[CycloElem], lambda: i64, v: &RootVector) -> Result<Option<usize>> {
    for (pos, e) in lhs.iter().enumerate() {
        let want = CycloElem::root_power(v.order, v.exponent(pos) as i64).scale(&Int::from(lambda));
        if !e.eq_exact(&want)? {
            return Ok(Some(pos + 1));
        }
    }
    Ok(None)
}

/// `M v_j = lambda_j v_j` for every `j`, where `lambda_j` is the dimension
/// `d` when `j` has reduced denominator `d / gcd(j, d)` within range (1 for
/// `A_q`'s units, `<= Q` for `X`) and 0 otherwise.
pub fn verify_circulant_relations(kind: MatrixKind, param: u64) -> Result<VerificationReport> {
    let (m, claim, expected_count) = match kind {
        MatrixKind::Aq => {
            if param == 0 {
                return Err(Error::domain("q must be positive"));
            }
            check_guard("q", param, CIRCULANT_MAX_Q)?;
            (build_aq(param)?, "Corollary1", euler_phi(param))
        }
        MatrixKind::X => {
            if param == 0 {
                return Err(Error::domain("Q must be positive"));
            }
            check_guard("Q", param, CIRCULANT_MAX_BIG_Q)?;
            (build_x(param)?, "Corollary2", totient_sums(param).0)
        }
        _ => return Err(Error::domain(format!("circulant relations apply to Aq and X, not {kind}"))),
    };
    let d = m.dim() as u64;
    let bound = if kind == MatrixKind::Aq { d } else { param };
    let results: Vec<(u64, bool, Option<usize>)> = (1..=d)
        .into_par_iter()
        .map(|j| {
            let reduced = d / j.gcd(&d);
            let nonzero = if kind == MatrixKind::Aq { reduced == d } else { reduced <= bound };
            let v = circulant_eigvec(d as usize, j)?;
            let lambda = if nonzero { d as i64 } else { 0 };
            Ok((j, nonzero, check_eigen(&int_times_vec(&m, &v), lambda, &v)?))
        })
        .collect::<Result<_>>()?;

    let mut ck = Checker::new(claim).param(if kind == MatrixKind::Aq { "q" } else { "Q" }, param);
    let mut count = 0u64;
    for (j, nonzero, bad) in &results {
        count += u64::from(*nonzero);
        ck.check(bad.is_none(), || json!({"j": j, "row": bad}));
    }
    ck.note("dimension", d);
    ck.compare("nonzero eigenvalue count", count, expected_count, count == expected_count);
    Ok(ck.finish())
}

/// Index of `u_{-j*}` in `[1, q]`.
pub fn paired_index(q: u64, j: u64) -> Result<u64> {
    let inv = mod_inverse(j as i64, q)?;
    let r = (q - inv % q) % q;
    Ok(if r == 0 { q } else { r })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KloostermanCaseCounts {
    /// `gcd(j, q) > 1`.
    pub kernel: u64,
    /// Units with `j + j* = 0 mod q`.
    pub self_paired: u64,
    /// Unordered pairs `{j, -j*}` with `j != -j*`.
    pub pairs: u64,
}

/// Exact checks of the three eigenvector cases of `B_q`:
/// `B u_j = 0` for `gcd(j,q) > 1`, `B u_j = q u_{-j*}` for units, hence
/// `B u_j = q u_j` when `j + j* = 0` and `B (u_j +- u_{-j*}) = +-q (u_j +- u_{-j*})`
/// otherwise. The case counts are compared with `phi~(q)` and
/// `(phi(q) +- phi~(q)) / 2`.
pub fn verify_kloosterman_relations(q: u64) -> Result<VerificationReport> {
    if q == 0 {
        return Err(Error::domain("q must be positive"));
    }
    check_guard("q", q, KLOOSTERMAN_VEC_MAX_Q)?;
    let b = build_bq(q)?;
    let qi = q as i64;
    let products: Vec<Vec<CycloElem>> = (1..=q)
        .into_par_iter()
        .map(|j| Ok(cyclo_times_vec(&b, &kloosterman_eigvec(q, j)?)))
        .collect::<Result<_>>()?;
    let u = |j: u64| kloosterman_eigvec(q, j).map(|v| v.entries());

    let mut ck = Checker::new("Corollary3").param("q", q);
    let mut counts = KloostermanCaseCounts::default();
    for j in 1..=q {
        let bu = &products[(j - 1) as usize];
        if j.gcd(&q) > 1 {
            counts.kernel += 1;
            let bad = bu.iter().position(|e| !e.is_zero());
            ck.check(bad.is_none(), || json!({"case": "kernel", "j": j, "row": bad.map(|r| r + 1)}));
            continue;
        }
        let nj = paired_index(q, j)?;
        let target = kloosterman_eigvec(q, nj)?;
        let bad = check_eigen(bu, qi, &target)?;
        ck.check(bad.is_none(), || json!({"case": "B u_j = q u_{-j*}", "j": j, "row": bad}));
        if nj == j {
            counts.self_paired += 1;
            let bad = check_eigen(bu, qi, &kloosterman_eigvec(q, j)?)?;
            ck.check(bad.is_none(), || json!({"case": "self-paired", "j": j, "row": bad}));
        } else if j < nj {
            counts.pairs += 1;
            let bn = &products[(nj - 1) as usize];
            let (uj, un) = (u(j)?, u(nj)?);
            for (sign, lambda) in [(1i64, qi), (-1, -qi)] {
                let s = Int::from(sign);
                for pos in 0..q as usize {
                    let lhs = bu[pos].add(&bn[pos].scale(&s))?;
                    let rhs = uj[pos].add(&un[pos].scale(&s))?.scale(&Int::from(lambda));
                    let ok = lhs.eq_exact(&rhs)?;
                    ck.check(ok, || json!({"case": if sign > 0 { "sum" } else { "difference" }, "j": j, "row": pos + 1}));
                }
            }
        }
    }
    if counts.pairs == 0 {
        ck.tag("vacuous");
    }
    let (phi, pt) = (euler_phi(q), phi_tilde_fast(q));
    ck.note("counts", counts);
    ck.compare("self-paired units", counts.self_paired, pt, counts.self_paired == pt);
    ck.compare("kernel indices", counts.kernel, q - phi, counts.kernel == q - phi);
    let plus = counts.self_paired + counts.pairs;
    if (phi + pt) % 2 == 0 {
        ck.compare("+q eigenvectors", plus, (phi + pt) / 2, plus == (phi + pt) / 2);
        ck.compare("-q eigenvectors", counts.pairs, (phi - pt) / 2, counts.pairs == (phi - pt) / 2);
    } else {
        ck.fail(json!({"parity": {"phi": phi, "phi_tilde": pt}}));
    }
    Ok(ck.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circulant_vectors() {
        let v = circulant_eigvec(4, 4).unwrap();
        assert!(v.entries().iter().all(|e| e.as_i64() == Some(1)));
        let v = circulant_eigvec(4, 2).unwrap();
        let ints: Vec<_> = v.entries().iter().map(|e| e.as_i64().unwrap()).collect();
        assert_eq!(ints, vec![1, -1, 1, -1]);
        let v = circulant_eigvec(6, 1).unwrap();
        assert_eq!(v.entries()[5], CycloElem::root_power(6, 5));
        assert!(circulant_eigvec(4, 5).is_err());
        assert!(circulant_eigvec(4, 0).is_err());
    }

    #[test]
    fn kloosterman_vector_offset() {
        let u = kloosterman_eigvec(5, 2).unwrap();
        assert_eq!(u.entries()[0], CycloElem::root_power(5, 2));
        assert_eq!(u.entries()[4], CycloElem::root_power(5, 0));
    }

    #[test]
    fn circulant_relation_examples() {
        let r = verify_circulant_relations(MatrixKind::Aq, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["comparisons"][0]["left"], 4);
        assert!(verify_circulant_relations(MatrixKind::Aq, 1).unwrap().pass);
        let r = verify_circulant_relations(MatrixKind::X, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["comparisons"][0]["left"], 4);
        assert!(verify_circulant_relations(MatrixKind::Bq, 3).is_err());
        assert!(verify_circulant_relations(MatrixKind::X, 6).is_err());
    }

    #[test]
    fn kloosterman_relation_examples() {
        assert_eq!(paired_index(5, 2).unwrap(), 2);
        assert_eq!(paired_index(5, 1).unwrap(), 4);
        let b = build_bq(5).unwrap();
        let u2 = kloosterman_eigvec(5, 2).unwrap();
        assert_eq!(check_eigen(&cyclo_times_vec(&b, &u2), 5, &u2).unwrap(), None);
        let b4 = build_bq(4).unwrap();
        assert!(cyclo_times_vec(&b4, &kloosterman_eigvec(4, 2).unwrap()).iter().all(CycloElem::is_zero));
        for q in 1..=12 {
            let r = verify_kloosterman_relations(q).unwrap();
            assert!(r.pass, "q={q}: {:?}", r.details);
            assert_eq!(r.has_tag("vacuous"), q <= 2 || phi_tilde_fast(q) == euler_phi(q));
        }
    }
}
