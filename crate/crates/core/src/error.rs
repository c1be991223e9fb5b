use thiserror::Error;

use crate::spectral::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter exceeded one of the size guards that keep the exact
    /// kernels at desk scale.
    #[error("dimension guard exceeded: {what} = {value} (limit {limit})")]
    Guard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("{k} is not invertible modulo {q}")]
    NotInvertible { k: i64, q: u64 },

    #[error("order mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    OrderMismatch { left: usize, right: usize },

    #[error("internal arithmetic error: {0}")]
    Arithmetic(String),

    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("rank certification failed: modular rank {modular}, trace identity gives {trace}")]
    RankMismatch { modular: usize, trace: String },

    #[error("verification failed: {}", .0.claim)]
    VerificationFailed(Box<VerificationReport>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn guard(what: &'static str, value: u64, limit: u64) -> Self {
        Error::Guard { what, value, limit }
    }

    /// Domain and guard errors are caller mistakes; everything else is a
    /// failure of the computation itself.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Guard { .. } | Error::NotInvertible { .. }
        )
    }
}

pub(crate) fn check_guard(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::guard(what, value, limit))
    } else {
        Ok(())
    }
}
