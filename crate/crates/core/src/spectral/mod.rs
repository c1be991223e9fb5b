//! Spectral verification: exact identities, certified ranks, and the
//! multiplicities they force, with a floating-point eigensolver as a
//! cross-check.

mod charpoly;
mod identities;
mod jacobi;
mod rank;
mod report;
mod sieve;

pub use charpoly::{char_poly_small, CHARPOLY_MAX_DIM};
pub use identities::{
    companion_matrix, count_lemma9, exact_trace, trace_closed_form, verify_kernel_sum,
    verify_kernel_sums_all, verify_orthogonality, verify_orthogonality_all,
    verify_scaled_idempotent, OrthoVariant, EXACT_CYCLO_MAX_DIM, FLOAT_IDEMPOTENT_TOL,
    LEMMA9_MAX_Q, ORTHOGONALITY_MAX_X,
};
pub use jacobi::{cluster_eigenvalues, jacobi_eigen, JacobiResult, JACOBI_MAX_DIM, JACOBI_MAX_SWEEPS};
pub use rank::{is_prime_u64, modular_rank, random_primes, rank_exact, RankCertificate, RANK_MAX_DIM};
pub(crate) use report::Checker;
pub use report::{
    CoefficientVector, EigenMultiplicity, SpectrumMethod, SpectrumReport, VerificationReport,
};
pub use sieve::{exponential_side, large_sieve_identity, SIEVE_MAX_Q};

use serde_json::json;

use crate::error::{Error, Result};
use crate::matrices::{build_matrix, BuiltMatrix, MatrixKind};

/// Largest dimension at which [`spectrum`] runs the Jacobi cross-check.
pub const JACOBI_CROSSCHECK_MAX_DIM: usize = 256;
/// Clustering tolerance per unit of dimension.
pub const CLUSTER_TOL: f64 = 1e-6;

fn failed(claim: &str, kind: MatrixKind, param: u64, why: serde_json::Value) -> Error {
    let mut ck = Checker::new(claim).param("kind", kind.name()).param("param", param);
    ck.fail(why);
    Error::VerificationFailed(Box::new(ck.finish()))
}

/// Exact spectrum of one of the four matrices.
///
/// The multiplicities follow from three facts checked along the way:
/// `M^2 = c T` with `T` an integer scaled idempotent, `rank M = rank T`
/// (certified by modular elimination against `tr(T) / c`), and, for the
/// Kloosterman kinds, `tr M = c (mult(+c) - mult(-c))`.
pub fn spectrum(kind: MatrixKind, param: u64) -> Result<SpectrumReport> {
    let m = build_matrix(kind, param)?;
    spectrum_of(&m)
}

pub fn spectrum_of(m: &BuiltMatrix) -> Result<SpectrumReport> {
    let (kind, param) = (m.kind, m.param);
    let c = m.scale();
    let dim = m.dim();

    let idem = verify_scaled_idempotent(m, c)?;
    if !idem.pass {
        return Err(Error::VerificationFailed(Box::new(idem)));
    }
    let float_only = idem.has_tag("float-only");

    let t = companion_matrix(m)?;
    let cert = match rank_exact(&t, c) {
        Ok(cert) => cert,
        Err(Error::RankMismatch { modular, trace }) => {
            return Err(failed("rank", kind, param, json!({"modular": modular, "trace": trace})));
        }
        Err(e) => return Err(e),
    };
    let rank = cert.rank as u64;
    let trace = exact_trace(m, 1)?;

    let mut counts: Vec<(i64, u64)> = vec![(0, dim as u64 - rank)];
    if kind.is_integer() {
        counts.push((c, rank));
    } else {
        let tr = trace
            .to_i64()
            .ok_or_else(|| Error::Arithmetic("trace exceeds 64 bits".into()))?;
        let signed = tr / c;
        let rank_i = rank as i64;
        if tr % c != 0 || (rank_i + signed) % 2 != 0 || signed.abs() > rank_i {
            return Err(failed(
                "trace-split",
                kind,
                param,
                json!({"trace": tr, "c": c, "rank": rank}),
            ));
        }
        counts.push((-c, ((rank_i - signed) / 2) as u64));
        counts.push((c, ((rank_i + signed) / 2) as u64));
    }
    counts.sort();

    let (mut max_residual, mut max_offdiag) = (None, None);
    if dim <= JACOBI_CROSSCHECK_MAX_DIM {
        let jr = jacobi_eigen(&m.to_f64(), dim)?;
        let targets: Vec<i64> = counts.iter().map(|&(v, _)| v).collect();
        let tol = CLUSTER_TOL * dim as f64;
        match cluster_eigenvalues(&jr.eigenvalues, &targets, tol) {
            Some((found, worst)) if counts.iter().all(|(v, n)| found.get(v) == Some(n)) => {
                max_residual = Some(worst);
                max_offdiag = Some(jr.off_norm);
            }
            _ => {
                return Err(failed(
                    "jacobi-crosscheck",
                    kind,
                    param,
                    json!({"eigenvalues": jr.eigenvalues, "expected": counts}),
                ));
            }
        }
    }

    Ok(SpectrumReport {
        kind,
        param,
        dimension: dim,
        spectrum: counts
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|(value, multiplicity)| EigenMultiplicity { value, multiplicity })
            .collect(),
        method: SpectrumMethod::RankTrace,
        max_residual,
        max_offdiag,
        rank: cert.rank,
        trace,
        float_only,
    })
}
