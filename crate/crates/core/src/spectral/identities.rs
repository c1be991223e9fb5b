//! Exact matrix identities, traces, and the brute-force orthogonality sums
//! behind them.

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::json;

use crate::cyclotomic::{mul_acc, CycloElem};
use crate::error::{check_guard, Error, Result};
use crate::int::Int;
use crate::matrices::{build_aq, build_x, float_matmul, BuiltMatrix, IntMatrix, MatrixBody, MatrixKind};
use crate::numtheory::{divisors, euler_phi, lcm_range, phi_tilde_fast, totient_sums};
use crate::sums::{kloosterman_elem, ramanujan_table, unit_pairs};

use super::report::{Checker, VerificationReport};

/// Largest cyclotomic dimension whose square is formed exactly.
pub const EXACT_CYCLO_MAX_DIM: usize = 64;
pub const ORTHOGONALITY_MAX_X: u64 = 120;
pub const LEMMA9_MAX_Q: u64 = 8;

/// Relative tolerance of the floating check of `M^2 = c T`, scaled by `c * dim`.
pub const FLOAT_IDEMPOTENT_TOL: f64 = 1e-6;

pub(crate) fn idempotent_claim(kind: MatrixKind) -> &'static str {
    match kind {
        MatrixKind::Aq => "Lemma5",
        MatrixKind::X => "Lemma7",
        MatrixKind::Bq => "Lemma10",
        MatrixKind::Y => "Lemma12",
    }
}

/// The integer matrix `T` with `M^2 = c T`: `M` itself for `A_q` and `X`,
/// `A_q` for `B_q` and `X` for `Y`.
pub fn companion_matrix(m: &BuiltMatrix) -> Result<IntMatrix> {
    match &m.body {
        MatrixBody::Int(a) => Ok(a.clone()),
        MatrixBody::Cyclo(_) => match m.kind.companion() {
            MatrixKind::Aq => build_aq(m.param),
            _ => build_x(m.param),
        },
    }
}

/// Checks `M^2 = c T` entrywise, and `M^3 = c^2 M` for integer kinds.
///
/// Cyclotomic matrices above [`EXACT_CYCLO_MAX_DIM`] are squared in floating
/// point; the report is then tagged `float-only` and carries the largest
/// deviation under `max_deviation`.
pub fn verify_scaled_idempotent(m: &BuiltMatrix, c: i64) -> Result<VerificationReport> {
    let mut ck = Checker::new(idempotent_claim(m.kind))
        .param("kind", m.kind.name())
        .param("param", m.param)
        .param("c", c);
    let n = m.dim();
    let t = companion_matrix(m)?;
    match &m.body {
        MatrixBody::Int(a) => {
            let sq = a.mul(a)?;
            let ct = t.scaled(c)?;
            let diff = sq.data().iter().zip(ct.data()).filter(|(x, y)| x != y).count();
            ck.compare("M^2 = cM", sq.trace().to_string(), ct.trace().to_string(), diff == 0);
            ck.note("square_mismatches", diff);
            let cube = sq.mul(a)?;
            let c2t = t.scaled(c.checked_mul(c).ok_or_else(|| Error::Arithmetic("c^2 overflows".into()))?)?;
            let diff3 = cube.data().iter().zip(c2t.data()).filter(|(x, y)| x != y).count();
            ck.compare("M^3 = c^2 M", cube.trace().to_string(), c2t.trace().to_string(), diff3 == 0);
            ck.note("cube_mismatches", diff3);
        }
        MatrixBody::Cyclo(b) if n <= EXACT_CYCLO_MAX_DIM => {
            let sq = b.mul(b)?;
            let order = b.order();
            let bad: Vec<(usize, usize)> = (0..n * n)
                .into_par_iter()
                .filter_map(|k| {
                    let (i, j) = (k / n, k % n);
                    let want = CycloElem::constant(order, c * t.get(i, j));
                    match sq.get(i, j).eq_exact(&want) {
                        Ok(true) => None,
                        _ => Some((i + 1, j + 1)),
                    }
                })
                .collect();
            ck.note("entries", n * n);
            ck.compare("M^2 = cT", (n * n - bad.len()) as u64, (n * n) as u64, bad.is_empty());
            for (i, j) in bad.into_iter().take(10) {
                ck.fail(json!({"entry": [i, j]}));
            }
        }
        MatrixBody::Cyclo(b) => {
            ck.tag("float-only");
            let sq = float_matmul(b.float(), b.float(), n);
            let worst = sq
                .par_iter()
                .zip(t.data().par_iter())
                .map(|(s, &tv)| (s - (c * tv) as f64).abs())
                .reduce(|| 0.0, f64::max);
            let tol = FLOAT_IDEMPOTENT_TOL * c as f64 * n as f64;
            ck.note("max_deviation", worst);
            ck.note("tolerance", tol);
            ck.compare("|M^2 - cT| <= tol", worst, tol, worst <= tol);
        }
    }
    Ok(ck.finish())
}

/// `tr(M)` or `tr(M^2)`, certified to be a rational integer.
pub fn exact_trace(m: &BuiltMatrix, power: u32) -> Result<Int> {
    if !(1..=2).contains(&power) {
        return Err(Error::domain(format!("trace power must be 1 or 2, got {power}")));
    }
    match &m.body {
        MatrixBody::Int(a) => {
            let n = a.dim();
            let t: i128 = if power == 1 {
                a.trace()
            } else {
                (0..n)
                    .into_par_iter()
                    .map(|i| (0..n).map(|k| i128::from(a.get(i, k)) * i128::from(a.get(k, i))).sum::<i128>())
                    .sum()
            };
            i64::try_from(t)
                .map(Int::from)
                .map_err(|_| Error::Arithmetic(format!("trace {t} exceeds 64 bits")))
        }
        MatrixBody::Cyclo(b) => {
            let diag = if power == 1 { b.diagonal() } else { b.product_diagonal(b)? };
            let mut buf = vec![Int::ZERO; b.order()];
            for d in &diag {
                for (e, c) in d.terms() {
                    buf[*e as usize] += c;
                }
            }
            CycloElem::drain_buffer(&mut buf)
                .as_integer()
                .ok_or_else(|| Error::Arithmetic(format!("trace of {} is not a rational integer", m.kind)))
        }
    }
}

/// Closed forms `q^j phi(q)`, `x^j Phi(Q)`, and for `B_q`, `Y`
/// `q phi~(q)`, `q^2 phi(q)` (resp. `x Phi~(Q)`, `x^2 Phi(Q)`).
pub fn trace_closed_form(kind: MatrixKind, param: u64, power: u32) -> Result<Int> {
    let d = kind.dimension(param)? as i64;
    let (phi, phi_t) = if kind.is_single() {
        (euler_phi(param), phi_tilde_fast(param))
    } else {
        totient_sums(param)
    };
    let (phi, phi_t) = (phi as i64, phi_t as i64);
    let v = match (kind.is_integer(), power) {
        (true, 1) => d * phi,
        (true, 2) => d * d * phi,
        (false, 1) => d * phi_t,
        (false, 2) => d * d * phi,
        _ => return Err(Error::domain(format!("trace power must be 1 or 2, got {power}"))),
    };
    Ok(Int::from(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthoVariant {
    /// `sum_a c_q(m-a) c_r(a-n)`
    Cc,
    /// `sum_a S(m,a;q) S(a,n;r)`
    Ss,
    /// `sum_m sum_a c_q(m-a) S(a,m;r)`
    Cs,
}

impl OrthoVariant {
    pub const ALL: [OrthoVariant; 3] = [OrthoVariant::Cc, OrthoVariant::Ss, OrthoVariant::Cs];

    pub fn name(self) -> &'static str {
        match self {
            OrthoVariant::Cc => "cc",
            OrthoVariant::Ss => "ss",
            OrthoVariant::Cs => "cs",
        }
    }
}

impl std::str::FromStr for OrthoVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc" => Ok(OrthoVariant::Cc),
            "ss" => Ok(OrthoVariant::Ss),
            "cs" => Ok(OrthoVariant::Cs),
            _ => Err(Error::domain(format!("unknown variant '{s}' (expected cc, ss or cs)"))),
        }
    }
}

fn check_divides(x: u64, q: u64, r: u64) -> Result<()> {
    if x == 0 || q == 0 || r == 0 || x % q != 0 || x % r != 0 {
        return Err(Error::domain(format!("need q | x and r | x, got x={x}, q={q}, r={r}")));
    }
    Ok(())
}

/// Brute-force orthogonality of Ramanujan and Kloosterman sums over a full
/// period `1..=x`, compared exactly with `x delta(q,r) c_q(m-n)` for every
/// `1 <= m, n <= x` (variants `cc`, `ss`) or `x^2 delta(q,r) phi~(q)` (`cs`).
pub fn verify_orthogonality(x: u64, q: u64, r: u64, variant: OrthoVariant) -> Result<VerificationReport> {
    check_guard("x", x, ORTHOGONALITY_MAX_X)?;
    check_divides(x, q, r)?;
    let claim = if variant == OrthoVariant::Cs { "Lemma4" } else { "Lemma1" };
    let mut ck = Checker::new(claim)
        .param("x", x)
        .param("q", q)
        .param("r", r)
        .param("variant", variant.name());
    let cq = ramanujan_table(q)?;
    let cr = ramanujan_table(r)?;
    let xi = x as i64;
    let delta = i64::from(q == r);
    let rhs = |m: u64, n: u64| xi * delta * cq[((m + q * x - n) % q) as usize];
    match variant {
        OrthoVariant::Cc => {
            for m in 1..=x {
                for n in 1..=x {
                    let lhs: i64 = (1..=x)
                        .map(|a| cq[((m + q * x - a) % q) as usize] * cr[((a + r * x - n) % r) as usize])
                        .sum();
                    let want = rhs(m, n);
                    ck.check(lhs == want, || json!({"m": m, "n": n, "lhs": lhs, "rhs": want}));
                }
            }
        }
        OrthoVariant::Ss => {
            // The summand depends on m only through m mod q and on n through
            // n mod r, so each distinct residue pair is summed once.
            let l = q.lcm(&r) as usize;
            let lifted_q: Vec<Vec<CycloElem>> = (0..q)
                .map(|m| (1..=x).map(|a| kloosterman_elem(q, m as i64, a as i64).lift(l)).collect())
                .collect::<Result<_>>()?;
            let lifted_r: Vec<Vec<CycloElem>> = (0..r)
                .map(|n| (1..=x).map(|a| kloosterman_elem(r, a as i64, n as i64).lift(l)).collect())
                .collect::<Result<_>>()?;
            let sums: Vec<CycloElem> = (0..(q * r) as usize)
                .into_par_iter()
                .map(|k| {
                    let (mq, nr) = (k / r as usize, k % r as usize);
                    let mut buf = vec![Int::ZERO; l];
                    for (s1, s2) in lifted_q[mq].iter().zip(&lifted_r[nr]) {
                        mul_acc(&mut buf, s1.terms(), s2.terms(), 0);
                    }
                    CycloElem::drain_buffer(&mut buf)
                })
                .collect();
            for m in 1..=x {
                for n in 1..=x {
                    let lhs = &sums[((m % q) * r + n % r) as usize];
                    let want = rhs(m, n);
                    let ok = lhs.eq_exact(&CycloElem::constant(l, want))?;
                    ck.check(ok, || json!({"m": m, "n": n, "lhs": lhs.to_string(), "rhs": want}));
                }
            }
        }
        OrthoVariant::Cs => {
            let mut buf = vec![Int::ZERO; r as usize];
            for m in 1..=x {
                for a in 1..=x {
                    let c = cq[((m + q * x - a) % q) as usize];
                    if c == 0 {
                        continue;
                    }
                    for (e, k) in kloosterman_elem(r, a as i64, m as i64).terms() {
                        buf[*e as usize].add_scaled(k, c);
                    }
                }
            }
            let lhs = CycloElem::drain_buffer(&mut buf);
            let want = xi * xi * delta * phi_tilde_fast(q) as i64;
            let ok = lhs.eq_exact(&CycloElem::constant(r as usize, want))?;
            ck.compare("total", lhs.to_string(), want, ok);
        }
    }
    Ok(ck.finish())
}

/// `sum_{a=1}^x e((k/q + l/r) a)`, exactly, against `x` when `q = r` and
/// `k + l = 0 mod q`, else `0`.
pub fn verify_kernel_sum(x: u64, q: u64, r: u64, k: i64, l: i64) -> Result<VerificationReport> {
    check_divides(x, q, r)?;
    check_guard("x", x, ORTHOGONALITY_MAX_X)?;
    if (k.rem_euclid(q as i64) as u64).gcd(&q) != 1 || (l.rem_euclid(r as i64) as u64).gcd(&r) != 1 {
        return Err(Error::domain(format!("need gcd(k,q) = gcd(l,r) = 1, got k={k}, q={q}, l={l}, r={r}")));
    }
    let mut ck = Checker::new("Lemma2")
        .param("x", x)
        .param("q", q)
        .param("r", r)
        .param("k", k)
        .param("l", l);
    let sum = kernel_sum(x, q, r, k, l);
    let want = if q == r && (k + l).rem_euclid(q as i64) == 0 { x as i64 } else { 0 };
    let ok = sum.eq_exact(&CycloElem::constant(x as usize, want))?;
    ck.compare("sum", sum.to_string(), want, ok);
    Ok(ck.finish())
}

fn kernel_sum(x: u64, q: u64, r: u64, k: i64, l: i64) -> CycloElem {
    let step = (k.rem_euclid(q as i64) as u64 * (x / q) + l.rem_euclid(r as i64) as u64 * (x / r)) % x;
    CycloElem::sum_of_roots(x as usize, (1..=x).map(|a| (step * a) % x))
}

/// Every `(q, r, k, l)` with `q, r | x` and `k`, `l` units, in one report.
pub fn verify_kernel_sums_all(x: u64) -> Result<VerificationReport> {
    check_guard("x", x, ORTHOGONALITY_MAX_X)?;
    if x == 0 {
        return Err(Error::domain("x must be positive"));
    }
    let mut ck = Checker::new("Lemma2").param("x", x);
    let ds = divisors(x);
    for &q in &ds {
        for &r in &ds {
            for (k, _) in unit_pairs(q) {
                for (l, _) in unit_pairs(r) {
                    let sum = kernel_sum(x, q, r, k as i64, l as i64);
                    let want = if q == r && (k + l) % q == 0 { x as i64 } else { 0 };
                    let ok = sum.eq_exact(&CycloElem::constant(x as usize, want))?;
                    ck.check(ok, || json!({"q": q, "r": r, "k": k, "l": l, "rhs": want}));
                }
            }
        }
    }
    Ok(ck.finish())
}

/// All divisor pairs of `x` for the given variants, in one report.
pub fn verify_orthogonality_all(x: u64, variants: &[OrthoVariant]) -> Result<VerificationReport> {
    check_guard("x", x, ORTHOGONALITY_MAX_X)?;
    if x == 0 {
        return Err(Error::domain("x must be positive"));
    }
    let claim = if variants.iter().all(|v| *v == OrthoVariant::Cs) { "Lemma4" } else { "Lemma1" };
    let ds = divisors(x);
    let mut jobs: Vec<(u64, u64, OrthoVariant)> = Vec::new();
    for &v in variants {
        for &q in &ds {
            jobs.extend(ds.iter().map(|&r| (q, r, v)));
        }
    }
    let reports = jobs
        .par_iter()
        .map(|&(q, r, v)| verify_orthogonality(x, q, r, v))
        .collect::<Result<Vec<_>>>()?;
    let mut ck = Checker::new(claim).param("x", x).param(
        "variants",
        variants.iter().map(|v| v.name()).collect::<Vec<_>>(),
    );
    let mut total = 0u64;
    for (rep, (q, r, v)) in reports.iter().zip(&jobs) {
        total += rep.detail("checked").as_u64().unwrap_or(0);
        ck.check(rep.pass, || json!({"q": q, "r": r, "variant": v.name(), "failures": rep.detail("failures")}));
    }
    ck.note("pairs", jobs.len());
    ck.note("comparisons_total", total);
    Ok(ck.finish())
}

/// Number of `j` in `[1, x]` with `x / gcd(j, x) <= Q`, against `Phi(Q)`.
pub fn count_lemma9(big_q: u64) -> Result<VerificationReport> {
    if big_q == 0 {
        return Err(Error::domain("Q must be positive"));
    }
    check_guard("Q", big_q, LEMMA9_MAX_Q)?;
    let x = lcm_range(big_q)?;
    let count = (1..=x).filter(|j| x / j.gcd(&x) <= big_q).count() as u64;
    let (phi_sum, _) = totient_sums(big_q);
    let mut ck = Checker::new("Lemma9").param("Q", big_q);
    ck.note("x", x);
    ck.compare("count", count, phi_sum, count == phi_sum);
    Ok(ck.finish())
}
