//! Named claims, each checkable for one parameter, and the batch runner.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use crate::eigenvectors::{
    verify_circulant_relations, verify_kloosterman_relations, CIRCULANT_MAX_BIG_Q, CIRCULANT_MAX_Q,
    KLOOSTERMAN_VEC_MAX_Q,
};
use crate::error::{check_guard, Error, Result};
use crate::golden::verify_example1;
use crate::matrices::{build_matrix, MatrixKind, MAX_Q_SINGLE, MAX_Q_SUMMED};
use crate::numtheory::{euler_phi, phi_tilde_fast, totient_sums};
use crate::poly;
use crate::spectral::{
    char_poly_small, count_lemma9, spectrum_of, verify_kernel_sums_all, verify_orthogonality_all,
    Checker, OrthoVariant, SpectrumReport, VerificationReport, CHARPOLY_MAX_DIM,
};
use crate::sums::{weil_check, WEIL_MAX_Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Lemma1,
    Lemma2,
    Lemma4,
    Lemma9,
    Corollary1,
    Corollary2,
    Corollary3,
    Example1,
    Weil,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Theorem1,
        Claim::Theorem2,
        Claim::Theorem3,
        Claim::Theorem4,
        Claim::Lemma1,
        Claim::Lemma2,
        Claim::Lemma4,
        Claim::Lemma9,
        Claim::Corollary1,
        Claim::Corollary2,
        Claim::Corollary3,
        Claim::Example1,
        Claim::Weil,
    ];

    /// Command-line identifier, e.g. `theorem3`.
    pub fn id(self) -> &'static str {
        match self {
            Claim::Theorem1 => "theorem1",
            Claim::Theorem2 => "theorem2",
            Claim::Theorem3 => "theorem3",
            Claim::Theorem4 => "theorem4",
            Claim::Lemma1 => "lemma1",
            Claim::Lemma2 => "lemma2",
            Claim::Lemma4 => "lemma4",
            Claim::Lemma9 => "lemma9",
            Claim::Corollary1 => "corollary1",
            Claim::Corollary2 => "corollary2",
            Claim::Corollary3 => "corollary3",
            Claim::Example1 => "example1",
            Claim::Weil => "weil",
        }
    }

    /// What the parameter means, or `None` if the claim takes none.
    pub fn param_name(self) -> Option<&'static str> {
        match self {
            Claim::Theorem1 | Claim::Theorem3 | Claim::Corollary1 | Claim::Corollary3 | Claim::Weil => Some("q"),
            Claim::Theorem2 | Claim::Theorem4 | Claim::Corollary2 | Claim::Lemma9 => Some("Q"),
            Claim::Lemma1 | Claim::Lemma2 | Claim::Lemma4 => Some("x"),
            Claim::Example1 => None,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == lower)
            .ok_or_else(|| {
                let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
                Error::domain(format!("unknown claim '{s}' (expected one of {})", ids.join(", ")))
            })
    }
}

fn spectrum_claim(name: &str, kind: MatrixKind, param: u64) -> Result<VerificationReport> {
    let m = build_matrix(kind, param)?;
    let mut ck = Checker::new(name).param(if kind.is_single() { "q" } else { "Q" }, param);
    let s: SpectrumReport = match spectrum_of(&m) {
        Ok(s) => s,
        Err(Error::VerificationFailed(rep)) => {
            ck.fail(json!({"step": rep.claim, "details": rep.details}));
            return Ok(ck.finish());
        }
        Err(e) => return Err(e),
    };
    let d = m.dim() as u64;
    let c = m.scale();
    let (phi, phi_t) = if kind.is_single() {
        (euler_phi(param), phi_tilde_fast(param))
    } else {
        totient_sums(param)
    };
    ck.note("dimension", d);
    ck.note("spectrum", &s.spectrum);
    if let Some(r) = s.max_residual {
        ck.note("max_residual", r);
        ck.note("max_offdiag", s.max_offdiag);
    }
    if s.float_only {
        ck.tag("float-only");
    }
    ck.compare("rank", s.rank as u64, phi, s.rank as u64 == phi);
    ck.compare("mult(0)", s.multiplicity(0), d - phi, s.multiplicity(0) == d - phi);
    if kind.is_integer() {
        ck.compare("mult(+c)", s.multiplicity(c), phi, s.multiplicity(c) == phi);
        let tr = s.trace.to_i64();
        let want = c * phi as i64;
        ck.compare("trace", tr, want, tr == Some(want));
    } else {
        let tr = s.trace.to_i64();
        let want = c * phi_t as i64;
        ck.compare("trace", tr, want, tr == Some(want));
        if (phi + phi_t) % 2 == 0 && phi >= phi_t {
            let (plus, minus) = ((phi + phi_t) / 2, (phi - phi_t) / 2);
            ck.compare("mult(+c)", s.multiplicity(c), plus, s.multiplicity(c) == plus);
            ck.compare("mult(-c)", s.multiplicity(-c), minus, s.multiplicity(-c) == minus);
        } else {
            ck.fail(json!({"parity": {"phi": phi, "phi_tilde": phi_t}}));
        }
    }
    if kind == MatrixKind::Aq && param <= CHARPOLY_MAX_DIM {
        let a = m.as_int().expect("A_q is an integer matrix");
        let got = char_poly_small(a)?;
        let want = poly::from_roots(&[(0, d - phi), (c, phi)]);
        let show = |p: &poly::IntPoly| p.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        ck.compare("characteristic polynomial", show(&got), show(&want), got == want);
    }
    Ok(ck.finish())
}

/// Checks one claim at one parameter. `param` is ignored by `example1`.
pub fn run_claim(claim: Claim, param: u64) -> Result<VerificationReport> {
    if claim.param_name().is_some() && param == 0 {
        return Err(Error::domain(format!("{claim} needs a positive parameter")));
    }
    match claim {
        Claim::Theorem1 => spectrum_claim("Theorem1", MatrixKind::Aq, param),
        Claim::Theorem2 => spectrum_claim("Theorem2", MatrixKind::X, param),
        Claim::Theorem3 => spectrum_claim("Theorem3", MatrixKind::Bq, param),
        Claim::Theorem4 => spectrum_claim("Theorem4", MatrixKind::Y, param),
        Claim::Lemma1 => verify_orthogonality_all(param, &[OrthoVariant::Cc, OrthoVariant::Ss]),
        Claim::Lemma2 => verify_kernel_sums_all(param),
        Claim::Lemma4 => verify_orthogonality_all(param, &[OrthoVariant::Cs]),
        Claim::Lemma9 => count_lemma9(param),
        Claim::Corollary1 => verify_circulant_relations(MatrixKind::Aq, param),
        Claim::Corollary2 => verify_circulant_relations(MatrixKind::X, param),
        Claim::Corollary3 => verify_kloosterman_relations(param),
        Claim::Example1 => verify_example1(),
        Claim::Weil => {
            let w = weil_check(param)?;
            let mut ck = Checker::new("Weil").param("q", param);
            ck.note("worst_ratio", w.worst_ratio);
            ck.note("max_abs", w.max_abs);
            ck.note("pairs", w.pairs);
            ck.compare("violations", w.violations.len(), 0, w.pass);
            for (m, n) in w.violations.iter().take(10) {
                ck.fail(json!({"m": m, "n": n}));
            }
            Ok(ck.finish())
        }
    }
}

/// Orthogonality moduli exercised by [`verify_all`].
pub const ORTHOGONALITY_MODULI: [u64; 3] = [12, 24, 60];

/// Every claim over its parameter range, bounded by `max_q` for the
/// single-modulus claims and `max_big_q` for the summed ones. Jobs run in
/// parallel; reports come back ordered by claim id, then parameter.
pub fn verify_all(max_q: u64, max_big_q: u64) -> Result<Vec<VerificationReport>> {
    check_guard("max-q", max_q, MAX_Q_SINGLE)?;
    check_guard("max-Q", max_big_q, MAX_Q_SUMMED)?;
    let mut jobs: Vec<(Claim, u64)> = Vec::new();
    for q in 1..=max_q {
        jobs.push((Claim::Theorem1, q));
        jobs.push((Claim::Theorem3, q));
        if q <= CIRCULANT_MAX_Q {
            jobs.push((Claim::Corollary1, q));
        }
        if q <= KLOOSTERMAN_VEC_MAX_Q {
            jobs.push((Claim::Corollary3, q));
        }
        if q <= WEIL_MAX_Q.min(60) {
            jobs.push((Claim::Weil, q));
        }
    }
    for big_q in 1..=max_big_q {
        jobs.push((Claim::Theorem2, big_q));
        jobs.push((Claim::Theorem4, big_q));
        jobs.push((Claim::Lemma9, big_q));
        if big_q <= CIRCULANT_MAX_BIG_Q {
            jobs.push((Claim::Corollary2, big_q));
        }
    }
    for x in ORTHOGONALITY_MODULI {
        for claim in [Claim::Lemma1, Claim::Lemma2, Claim::Lemma4] {
            jobs.push((claim, x));
        }
    }
    jobs.push((Claim::Example1, 0));
    jobs.sort_by(|a, b| (a.0.id(), a.1).cmp(&(b.0.id(), b.1)));
    jobs.par_iter().map(|&(c, p)| run_claim(c, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_claims() {
        assert_eq!("theorem3".parse::<Claim>().unwrap(), Claim::Theorem3);
        assert_eq!("Lemma9".parse::<Claim>().unwrap(), Claim::Lemma9);
        assert!("lemma3".parse::<Claim>().is_err());
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
    }

    #[test]
    fn single_claims_pass() {
        for (c, p) in [
            (Claim::Theorem1, 6),
            (Claim::Theorem1, 10),
            (Claim::Theorem2, 3),
            (Claim::Theorem3, 13),
            (Claim::Theorem4, 3),
            (Claim::Lemma1, 12),
            (Claim::Lemma2, 12),
            (Claim::Lemma4, 12),
            (Claim::Lemma9, 4),
            (Claim::Corollary1, 9),
            (Claim::Corollary2, 2),
            (Claim::Corollary3, 10),
            (Claim::Example1, 0),
            (Claim::Weil, 15),
        ] {
            let r = run_claim(c, p).unwrap();
            assert!(r.pass, "{c} {p}: {:?}", r.details);
        }
    }

    #[test]
    fn zero_param_is_domain_error() {
        assert!(matches!(run_claim(Claim::Theorem1, 0), Err(Error::Domain(_))));
        assert!(run_claim(Claim::Example1, 0).is_ok());
    }

    #[test]
    fn batch_is_ordered() {
        let reps = verify_all(4, 2).unwrap();
        assert!(reps.iter().all(|r| r.pass));
        let keys: Vec<String> = reps.iter().map(|r| r.claim.to_ascii_lowercase()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
