//! Exact Ramanujan and Kloosterman sums, the matrices built from them, and
//! machinery to verify their spectra.
//!
//! Everything algebraic is computed in cyclotomic integer rings
//! `Z[zeta_q]`, so equalities are decided exactly; floating point appears
//! only in the eigensolver cross-check and in human-readable renderings.

pub mod cyclotomic;
pub mod eigenvectors;
pub mod error;
pub mod golden;
pub mod int;
pub mod matrices;
pub mod numtheory;
pub mod poly;
pub mod spectral;
pub mod suite;
pub mod sums;

pub use cyclotomic::{cyclo_poly, CycloElem, CycloPoly};
pub use error::{Error, Result};
pub use int::Int;
pub use matrices::{build_matrix, export_matrix, BuiltMatrix, CycloMatrix, ExportFormat, IntMatrix, MatrixKind};
pub use spectral::{spectrum, CoefficientVector, SpectrumReport, VerificationReport};
pub use suite::{run_claim, verify_all, Claim};
