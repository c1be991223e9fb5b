//! Hand-derived matrices `B_2, ..., B_5` and their spectra, stored exactly.

use serde_json::json;

use crate::cyclotomic::CycloElem;
use crate::error::Result;
use crate::matrices::{build_bq, MatrixKind};
use crate::spectral::{spectrum, Checker, VerificationReport};

pub const B2: [[i64; 2]; 2] = [[1, -1], [-1, 1]];
pub const B3: [[i64; 3]; 3] = [[-1, 2, -1], [2, -1, -1], [-1, -1, 2]];
pub const B4: [[i64; 4]; 4] = [[-2, 0, 2, 0], [0, 2, 0, -2], [2, 0, -2, 0], [0, -2, 0, 2]];

/// Symbols for the entries of `B_5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B5Entry {
    /// `(3 - sqrt 5) / 2`
    HalfThreeMinus,
    /// `(3 + sqrt 5) / 2`
    HalfThreePlus,
    /// `-1 - sqrt 5`
    MinusOneMinus,
    /// `-1 + sqrt 5`
    MinusOnePlus,
    Int(i64),
}

use B5Entry::{HalfThreeMinus as A, HalfThreePlus as D, Int as N, MinusOneMinus as B, MinusOnePlus as C};

pub const B5: [[B5Entry; 5]; 5] = [
    [A, B, C, D, N(-1)],
    [B, D, A, C, N(-1)],
    [C, A, D, B, N(-1)],
    [D, C, B, A, N(-1)],
    [N(-1), N(-1), N(-1), N(-1), N(4)],
];

impl B5Entry {
    /// Coefficients of `1, zeta_5, ..., zeta_5^4`, using
    /// `zeta + zeta^4 = (-1 + sqrt 5) / 2` and `zeta^2 + zeta^3 = (-1 - sqrt 5) / 2`.
    pub fn coeffs(self) -> [i64; 5] {
        match self {
            A => [2, 0, 1, 1, 0],
            D => [2, 1, 0, 0, 1],
            B => [0, 0, 2, 2, 0],
            C => [0, 2, 0, 0, 2],
            N(k) => [k, 0, 0, 0, 0],
        }
    }

    pub fn exact(self) -> CycloElem {
        CycloElem::from_coeffs(5, self.coeffs())
    }

    pub fn value(self) -> f64 {
        let r5 = 5f64.sqrt();
        match self {
            A => (3.0 - r5) / 2.0,
            D => (3.0 + r5) / 2.0,
            B => -1.0 - r5,
            C => -1.0 + r5,
            N(k) => k as f64,
        }
    }
}

/// Expected spectra as `(eigenvalue, multiplicity)`, ascending.
pub fn expected_spectrum(q: u64) -> Option<&'static [(i64, u64)]> {
    match q {
        2 => Some(&[(0, 1), (2, 1)]),
        3 => Some(&[(-3, 1), (0, 1), (3, 1)]),
        4 => Some(&[(-4, 1), (0, 2), (4, 1)]),
        5 => Some(&[(-5, 1), (0, 1), (5, 3)]),
        _ => None,
    }
}

pub const FLOAT_TOL: f64 = 1e-9;

/// Built `B_2, ..., B_5` against the stored matrices (exactly, and for `B_5`
/// also through the float rendering), plus their spectra.
pub fn verify_example1() -> Result<VerificationReport> {
    let mut ck = Checker::new("Example1");
    let small: [(u64, Vec<Vec<i64>>); 3] = [
        (2, B2.iter().map(|r| r.to_vec()).collect()),
        (3, B3.iter().map(|r| r.to_vec()).collect()),
        (4, B4.iter().map(|r| r.to_vec()).collect()),
    ];
    for (q, rows) in &small {
        let b = build_bq(*q)?;
        let mut mismatches = 0;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if b.get(i, j).as_i64() != Some(v) {
                    mismatches += 1;
                }
            }
        }
        ck.compare(&format!("B_{q} entries"), mismatches, 0, mismatches == 0);
    }

    let b5 = build_bq(5)?;
    let mut exact_bad = 0;
    let mut worst = 0.0f64;
    for (i, row) in B5.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !b5.get(i, j).eq_exact(&e.exact())? {
                exact_bad += 1;
            }
            worst = worst.max((b5.float()[i * 5 + j] - e.value()).abs());
        }
    }
    ck.compare("B_5 entries", exact_bad, 0, exact_bad == 0);
    ck.compare("B_5 float deviation", worst, FLOAT_TOL, worst <= FLOAT_TOL);

    for q in 2..=5 {
        let want = expected_spectrum(q).unwrap_or_default();
        match spectrum(MatrixKind::Bq, q) {
            Ok(s) => {
                let got: Vec<(i64, u64)> = s.spectrum.iter().map(|e| (e.value, e.multiplicity)).collect();
                ck.compare(&format!("B_{q} spectrum"), &got, want, got == want);
            }
            Err(e) => ck.fail(json!({"spectrum": q, "error": e.to_string()})),
        }
    }
    Ok(ck.finish())
}
