//! The four matrix families and their exact products.
//!
//! Builders use the 1-based indices `m, n = 1..=d` of the definitions;
//! storage is row-major and 0-based, so entry `(m, n)` lives at
//! `(m - 1) * d + (n - 1)`.

use std::borrow::Cow;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::{mul_acc, CycloElem};
use crate::error::{check_guard, Error, Result};
use crate::int::Int;
use crate::numtheory::lcm_range;
use crate::sums::{ramanujan_table, unit_pairs};

/// Largest `q` for the single-modulus families `A_q`, `B_q`.
pub const MAX_Q_SINGLE: u64 = 256;
/// Largest `Q` for the summed families `X`, `Y`; `lcm(1..=8) = 840`.
pub const MAX_Q_SUMMED: u64 = 8;
/// `Y` keeps its exact entries in memory up to this dimension; beyond it
/// entries are regenerated on request.
pub const Y_STORED_MAX_DIM: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MatrixKind {
    Aq,
    Bq,
    X,
    Y,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 4] = [MatrixKind::Aq, MatrixKind::Bq, MatrixKind::X, MatrixKind::Y];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Aq => "Aq",
            MatrixKind::Bq => "Bq",
            MatrixKind::X => "X",
            MatrixKind::Y => "Y",
        }
    }

    /// Entries are rational integers (Ramanujan families).
    pub fn is_integer(self) -> bool {
        matches!(self, MatrixKind::Aq | MatrixKind::X)
    }

    /// Indexed by a single modulus `q` rather than a bound `Q`.
    pub fn is_single(self) -> bool {
        matches!(self, MatrixKind::Aq | MatrixKind::Bq)
    }

    /// The integer matrix whose multiple the square of this one is:
    /// `A_q` for `B_q`, `X` for `Y`, itself otherwise.
    pub fn companion(self) -> MatrixKind {
        match self {
            MatrixKind::Aq | MatrixKind::Bq => MatrixKind::Aq,
            MatrixKind::X | MatrixKind::Y => MatrixKind::X,
        }
    }

    /// Validates `param` and returns the dimension (`q`, or `lcm(1..=Q)`).
    pub fn dimension(self, param: u64) -> Result<usize> {
        if param == 0 {
            return Err(Error::domain(format!("{} needs a positive parameter", self.name())));
        }
        if self.is_single() {
            check_guard("q", param, MAX_Q_SINGLE)?;
            Ok(param as usize)
        } else {
            check_guard("Q", param, MAX_Q_SUMMED)?;
            Ok(lcm_range(param)? as usize)
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Aq" | "aq" | "A" => Ok(MatrixKind::Aq),
            "Bq" | "bq" | "B" => Ok(MatrixKind::Bq),
            "X" | "x" => Ok(MatrixKind::X),
            "Y" | "y" => Ok(MatrixKind::Y),
            _ => Err(Error::domain(format!("unknown matrix kind '{s}' (expected Aq, Bq, X or Y)"))),
        }
    }
}

/// Dense square matrix of machine integers. Products check a magnitude
/// bound up front, so they are either exact or refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(dim: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::domain(format!("{} entries for a {dim}x{dim} matrix", data.len())));
        }
        Ok(IntMatrix { dim, data })
    }

    /// Build from a function of 0-based `(row, col)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        IntMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| i64::from(i == j))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != other.dim {
            return Err(Error::domain("dimension mismatch in product"));
        }
        let n = self.dim;
        let bound = (n as u128) * u128::from(self.max_abs()) * u128::from(other.max_abs());
        if bound > i64::MAX as u128 {
            return Err(Error::Arithmetic(format!(
                "integer product bound {bound} exceeds 64 bits"
            )));
        }
        let mut out = vec![0i64; n * n];
        out.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (r, b) in row.iter_mut().zip(brow) {
                    *r += a * b;
                }
            }
        });
        Ok(IntMatrix { dim: n, data: out })
    }

    pub fn scaled(&self, c: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|v| v.checked_mul(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Arithmetic("overflow scaling integer matrix".into()))?;
        Ok(IntMatrix { dim: self.dim, data })
    }

    pub fn trace(&self) -> i128 {
        (0..self.dim).map(|i| i128::from(self.get(i, i))).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entry depends only on `(row - col) mod dim`.
    pub fn is_circulant(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == self.get((i + n - j) % n, 0)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&v| v as f64).collect()
    }
}

type EntryFn = dyn Fn(usize, usize) -> CycloElem + Send + Sync;

#[derive(Clone)]
enum Entries {
    Stored(Vec<CycloElem>),
    /// Generated from 0-based `(row, col)` on every access.
    OnDemand(Arc<EntryFn>),
}

/// Dense square matrix over `Z[zeta_order]` with a float rendering of its
/// (real) entries computed once at construction.
#[derive(Clone)]
pub struct CycloMatrix {
    order: usize,
    dim: usize,
    entries: Entries,
    float: Vec<f64>,
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloMatrix")
            .field("order", &self.order)
            .field("dim", &self.dim)
            .field("stored", &self.is_stored())
            .finish()
    }
}

impl CycloMatrix {
    pub fn from_entries(order: usize, dim: usize, entries: Vec<CycloElem>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::domain(format!("{} entries for a {dim}x{dim} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch { left: order, right: e.order() });
        }
        let float = entries.par_iter().map(|e| e.to_complex().re).collect();
        Ok(CycloMatrix { order, dim, entries: Entries::Stored(entries), float })
    }

    /// Build from a function of 0-based `(row, col)`; entries are stored when
    /// `store` is set and regenerated on access otherwise.
    pub fn from_fn<F>(order: usize, dim: usize, store: bool, f: F) -> Self
    where
        F: Fn(usize, usize) -> CycloElem + Send + Sync + 'static,
    {
        if store {
            let entries: Vec<CycloElem> =
                (0..dim * dim).into_par_iter().map(|k| f(k / dim, k % dim)).collect();
            let float = entries.par_iter().map(|e| e.to_complex().re).collect();
            CycloMatrix { order, dim, entries: Entries::Stored(entries), float }
        } else {
            let float = (0..dim * dim)
                .into_par_iter()
                .map(|k| f(k / dim, k % dim).to_complex().re)
                .collect();
            CycloMatrix { order, dim, entries: Entries::OnDemand(Arc::new(f)), float }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_stored(&self) -> bool {
        matches!(self.entries, Entries::Stored(_))
    }

    /// Exact entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> Cow<'_, CycloElem> {
        match &self.entries {
            Entries::Stored(v) => Cow::Borrowed(&v[i * self.dim + j]),
            Entries::OnDemand(f) => Cow::Owned(f(i, j)),
        }
    }

    /// Row-major float rendering (real parts).
    pub fn float(&self) -> &[f64] {
        &self.float
    }

    fn materialized(&self) -> Cow<'_, [CycloElem]> {
        match &self.entries {
            Entries::Stored(v) => Cow::Borrowed(v.as_slice()),
            Entries::OnDemand(f) => {
                let n = self.dim;
                Cow::Owned((0..n * n).into_par_iter().map(|k| f(k / n, k % n)).collect())
            }
        }
    }

    fn check_compatible(&self, other: &CycloMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        if self.dim != other.dim {
            return Err(Error::domain("dimension mismatch in product"));
        }
        Ok(())
    }

    /// Exact product in `Z[zeta_order]`.
    pub fn mul(&self, other: &CycloMatrix) -> Result<CycloMatrix> {
        self.check_compatible(other)?;
        let (n, order) = (self.dim, self.order);
        let a = self.materialized();
        let b = other.materialized();
        let entries: Vec<CycloElem> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut buf = vec![Int::ZERO; order];
                let arow = &a[i * n..(i + 1) * n];
                let b = &b;
                (0..n)
                    .map(|j| {
                        for (k, aik) in arow.iter().enumerate() {
                            mul_acc(&mut buf, aik.terms(), b[k * n + j].terms(), 0);
                        }
                        CycloElem::drain_buffer(&mut buf)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        CycloMatrix::from_entries(order, n, entries)
    }

    /// Diagonal of `self * other` without forming the full product.
    pub fn product_diagonal(&self, other: &CycloMatrix) -> Result<Vec<CycloElem>> {
        self.check_compatible(other)?;
        let (n, order) = (self.dim, self.order);
        Ok((0..n)
            .into_par_iter()
            .map(|i| {
                let mut buf = vec![Int::ZERO; order];
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, i));
                    mul_acc(&mut buf, a.terms(), b.terms(), 0);
                }
                CycloElem::drain_buffer(&mut buf)
            })
            .collect())
    }

    pub fn diagonal(&self) -> Vec<CycloElem> {
        (0..self.dim).map(|i| self.get(i, i).into_owned()).collect()
    }

    /// Exact symmetry, every pair compared under `is_zero`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).into_par_iter().all(|i| {
            (0..i).all(|j| self.get(i, j).eq_exact(&self.get(j, i)).unwrap_or(false))
        })
    }
}

/// Row-major float product.
pub fn float_matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    out.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for (r, b) in row.iter_mut().zip(&b[k * n..(k + 1) * n]) {
                *r += aik * b;
            }
        }
    });
    out
}

#[derive(Clone, Debug)]
pub enum MatrixBody {
    Int(IntMatrix),
    Cyclo(CycloMatrix),
}

/// A matrix from one of the four families, tagged with how it was built.
#[derive(Clone, Debug)]
pub struct BuiltMatrix {
    pub kind: MatrixKind,
    pub param: u64,
    pub body: MatrixBody,
}

impl BuiltMatrix {
    pub fn dim(&self) -> usize {
        match &self.body {
            MatrixBody::Int(m) => m.dim(),
            MatrixBody::Cyclo(m) => m.dim(),
        }
    }

    /// The nonzero eigenvalue magnitude: `q` for `A_q`, `B_q`; `x` for `X`, `Y`.
    pub fn scale(&self) -> i64 {
        self.dim() as i64
    }

    pub fn as_int(&self) -> Option<&IntMatrix> {
        match &self.body {
            MatrixBody::Int(m) => Some(m),
            MatrixBody::Cyclo(_) => None,
        }
    }

    pub fn as_cyclo(&self) -> Option<&CycloMatrix> {
        match &self.body {
            MatrixBody::Cyclo(m) => Some(m),
            MatrixBody::Int(_) => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.body {
            MatrixBody::Int(m) => m.to_f64(),
            MatrixBody::Cyclo(m) => m.float().to_vec(),
        }
    }
}

/// `A_q = (c_q(m - n))`.
pub fn build_aq(q: u64) -> Result<IntMatrix> {
    let d = MatrixKind::Aq.dimension(q)?;
    let table = ramanujan_table(q)?;
    Ok(IntMatrix::from_fn(d, |i, j| table[(i + d - j) % d]))
}

/// `X = (sum_{q <= Q} c_q(m - n))`, dimension `lcm(1..=Q)`.
pub fn build_x(big_q: u64) -> Result<IntMatrix> {
    let x = MatrixKind::X.dimension(big_q)?;
    let tables = (1..=big_q).map(ramanujan_table).collect::<Result<Vec<_>>>()?;
    let diff: Vec<i64> = (0..x)
        .map(|d| tables.iter().map(|t| t[d % t.len()]).sum())
        .collect();
    Ok(IntMatrix::from_fn(x, |i, j| diff[(i + x - j) % x]))
}

/// `B_q = (S(m, n; q))` over `Z[zeta_q]`.
pub fn build_bq(q: u64) -> Result<CycloMatrix> {
    let d = MatrixKind::Bq.dimension(q)?;
    let pairs = unit_pairs(q);
    Ok(CycloMatrix::from_fn(d, d, true, move |i, j| {
        let (m, n) = (i as u64 + 1, j as u64 + 1);
        CycloElem::sum_of_roots(d, pairs.iter().map(|&(k, kinv)| (m * k + n * kinv) % q))
    }))
}

/// `Y = (sum_{q <= Q} S(m, n; q))` over `Z[zeta_x]`, each `S(.,.;q)` lifted
/// along `zeta_q = zeta_x^(x/q)`.
pub fn build_y(big_q: u64) -> Result<CycloMatrix> {
    let x = MatrixKind::Y.dimension(big_q)?;
    let moduli: Vec<(u64, u64, Vec<(u64, u64)>)> = (1..=big_q)
        .map(|q| (q, x as u64 / q, unit_pairs(q)))
        .collect();
    let store = x <= Y_STORED_MAX_DIM;
    Ok(CycloMatrix::from_fn(x, x, store, move |i, j| {
        let (m, n) = (i as u64 + 1, j as u64 + 1);
        let exps = moduli.iter().flat_map(|(q, step, pairs)| {
            pairs.iter().map(move |&(k, kinv)| ((m * k + n * kinv) % q) * step)
        });
        CycloElem::sum_of_roots(x, exps)
    }))
}

pub fn build_matrix(kind: MatrixKind, param: u64) -> Result<BuiltMatrix> {
    let body = match kind {
        MatrixKind::Aq => MatrixBody::Int(build_aq(param)?),
        MatrixKind::X => MatrixBody::Int(build_x(param)?),
        MatrixKind::Bq => MatrixBody::Cyclo(build_bq(param)?),
        MatrixKind::Y => MatrixBody::Cyclo(build_y(param)?),
    };
    Ok(BuiltMatrix { kind, param, body })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::domain(format!("unknown format '{s}' (expected csv or json)"))),
        }
    }
}

/// Decimal rendering with 12 significant digits; float noise below 1e-9
/// prints as zero.
pub fn format_sig12(v: f64) -> String {
    let v = if v.abs() < 1e-9 { 0.0 } else { v };
    if v == 0.0 {
        return format!("{:.11}", 0.0);
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Writes `matrix` as CSV (no header, one row per line) or JSON.
///
/// Cyclotomic matrices print their float rendering; with `with_exact` the
/// JSON additionally carries each entry's dense coefficient vector.
pub fn export_matrix<W: Write>(
    matrix: &BuiltMatrix,
    format: ExportFormat,
    with_exact: bool,
    out: &mut W,
) -> Result<()> {
    let n = matrix.dim();
    match format {
        ExportFormat::Csv => {
            for i in 0..n {
                let row: Vec<String> = match &matrix.body {
                    MatrixBody::Int(m) => m.row(i).iter().map(i64::to_string).collect(),
                    MatrixBody::Cyclo(m) => {
                        m.float()[i * n..(i + 1) * n].iter().map(|&v| format_sig12(v)).collect()
                    }
                };
                writeln!(out, "{}", row.join(","))?;
            }
        }
        ExportFormat::Json => {
            let entries: Value = match &matrix.body {
                MatrixBody::Int(m) => (0..n).map(|i| json!(m.row(i))).collect(),
                MatrixBody::Cyclo(m) => (0..n)
                    .map(|i| {
                        m.float()[i * n..(i + 1) * n]
                            .iter()
                            .map(|&v| json!(format_sig12(v).parse::<f64>().unwrap_or(v)))
                            .collect::<Value>()
                    })
                    .collect(),
            };
            let mut doc = json!({
                "kind": matrix.kind.name(),
                "param": matrix.param,
                "dimension": n,
                "entries": entries,
            });
            if let (true, MatrixBody::Cyclo(m)) = (with_exact, &matrix.body) {
                let exact: Value = (0..n)
                    .map(|i| (0..n).map(|j| json!(m.get(i, j).coeffs())).collect::<Value>())
                    .collect();
                doc["order"] = json!(m.order());
                doc["exact"] = exact;
            }
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::{kloosterman_elem, ramanujan};

    #[test]
    fn b2_and_b4_match_hand_values() {
        let b2 = build_bq(2).unwrap();
        let ints: Vec<i64> = (0..4).map(|k| b2.get(k / 2, k % 2).as_i64().unwrap()).collect();
        assert_eq!(ints, vec![1, -1, -1, 1]);
        let b4 = build_bq(4).unwrap();
        let expect = [[-2, 0, 2, 0], [0, 2, 0, -2], [2, 0, -2, 0], [0, -2, 0, 2]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(b4.get(i, j).as_i64(), Some(v));
            }
        }
    }

    #[test]
    fn x_small_cases() {
        assert_eq!(build_x(2).unwrap().data(), &[2, 0, 0, 2]);
        assert_eq!(build_x(1).unwrap().data(), &[1]);
        assert_eq!(build_x(3).unwrap().dim(), 6);
    }

    #[test]
    fn guards() {
        assert!(matches!(build_matrix(MatrixKind::Aq, 257), Err(Error::Guard { .. })));
        assert!(matches!(build_matrix(MatrixKind::Y, 9), Err(Error::Guard { .. })));
        assert!(matches!(build_matrix(MatrixKind::Bq, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetry_and_circulance() {
        for q in 1..=30 {
            let a = build_aq(q).unwrap();
            assert!(a.is_symmetric() && a.is_circulant(), "A_{q}");
            assert!(build_bq(q).unwrap().is_symmetric(), "B_{q}");
        }
        for big_q in 1..=5 {
            let x = build_x(big_q).unwrap();
            assert!(x.is_symmetric() && x.is_circulant(), "X at Q={big_q}");
            assert!(build_y(big_q).unwrap().is_symmetric(), "Y at Q={big_q}");
        }
    }

    #[test]
    fn aq_row_sums_vanish() {
        for q in 2..=64u64 {
            let a = build_aq(q).unwrap();
            for i in 0..a.dim() {
                assert_eq!(a.row(i).iter().sum::<i64>(), 0, "A_{q} row {i}");
            }
        }
    }

    #[test]
    fn last_row_of_bq_is_ramanujan() {
        for q in 1..=40u64 {
            let b = build_bq(q).unwrap();
            let d = q as usize;
            for n in 1..=d {
                let c = ramanujan(q, n as i64).unwrap();
                assert_eq!(b.get(d - 1, n - 1).as_i64(), Some(c), "B_{q}[{q},{n}]");
            }
        }
    }

    #[test]
    fn y_entries_are_lifted_sums() {
        let y = build_y(3).unwrap();
        for (m, n) in [(1i64, 1i64), (2, 5), (6, 3)] {
            let mut want = CycloElem::zero(6);
            for q in 1..=3u64 {
                want = want.add(&kloosterman_elem(q, m, n).lift(6).unwrap()).unwrap();
            }
            assert!(y.get(m as usize - 1, n as usize - 1).eq_exact(&want).unwrap());
        }
        // Q = 1: every entry is S(m, n; 1) = 1.
        let y1 = build_y(1).unwrap();
        assert_eq!(y1.get(0, 0).as_i64(), Some(1));
    }

    #[test]
    fn on_demand_matches_stored() {
        let y7 = build_y(7).unwrap();
        assert!(!y7.is_stored());
        assert_eq!(y7.dim(), 420);
        let e = y7.get(10, 200);
        assert!((e.to_complex().re - y7.float()[10 * 420 + 200]).abs() < 1e-12);
    }

    #[test]
    fn exact_product_matches_float_product() {
        let b = build_bq(7).unwrap();
        let sq = b.mul(&b).unwrap();
        let fsq = float_matmul(b.float(), b.float(), 7);
        for (e, f) in sq.float().iter().zip(&fsq) {
            assert!((e - f).abs() < 1e-9);
        }
        let diag = b.product_diagonal(&b).unwrap();
        for (i, d) in diag.iter().enumerate() {
            assert!(d.eq_exact(&sq.get(i, i)).unwrap());
        }
    }

    #[test]
    fn int_product_guard() {
        let m = IntMatrix::from_fn(2, |_, _| i64::MAX / 2);
        assert!(matches!(m.mul(&m), Err(Error::Arithmetic(_))));
        let a = build_aq(3).unwrap();
        assert_eq!(a.mul(&IntMatrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn csv_export() {
        let a2 = build_matrix(MatrixKind::Aq, 2).unwrap();
        let mut buf = Vec::new();
        export_matrix(&a2, ExportFormat::Csv, false, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1,-1\n-1,1\n");

        let b5 = build_matrix(MatrixKind::Bq, 5).unwrap();
        let mut buf = Vec::new();
        export_matrix(&b5, ExportFormat::Csv, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("0.381966011250,"), "{text}");
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn json_export() {
        let x3 = build_matrix(MatrixKind::X, 3).unwrap();
        let mut buf = Vec::new();
        export_matrix(&x3, ExportFormat::Json, false, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["dimension"], 6);
        assert_eq!(v["kind"], "X");
        assert_eq!(v["param"], 3);
        assert_eq!(v["entries"][0][0], 4);
        assert!(v.get("exact").is_none());

        let b3 = build_matrix(MatrixKind::Bq, 3).unwrap();
        let mut buf = Vec::new();
        export_matrix(&b3, ExportFormat::Json, true, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["exact"][0][1].as_array().unwrap().len(), 3);
        assert_eq!(v["entries"][0][1], 2.0);
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.3819660112501051), "0.381966011250");
        assert_eq!(format_sig12(4.0), "4.00000000000");
        assert_eq!(format_sig12(-3.23606797749979), "-3.23606797750");
        assert_eq!(format_sig12(1e-16), "0.00000000000");
        assert_eq!(format_sig12(-120.5), "-120.500000000");
    }
}
