use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::int::Int;
use crate::matrices::MatrixKind;

/// Pass/fail record for one claim instance.
///
/// `details` always carries `checked` (number of exact comparisons made),
/// `failures` (the first few mismatches) and `tags` (e.g. `float-only`,
/// `vacuous`), plus claim-specific quantities.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    pub details: Value,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.details["tags"]
            .as_array()
            .is_some_and(|tags| tags.iter().any(|t| t == tag))
    }

    pub fn detail(&self, key: &str) -> &Value {
        &self.details[key]
    }

    /// Same report with `elapsed_ms` zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport { elapsed_ms: 0.0, ..self.clone() }
    }
}

const MAX_RECORDED_FAILURES: usize = 10;

/// Accumulates comparisons for a [`VerificationReport`].
pub(crate) struct Checker {
    claim: String,
    params: Map<String, Value>,
    pass: bool,
    checked: u64,
    failures: Vec<Value>,
    failure_count: u64,
    comparisons: Vec<Value>,
    tags: Vec<String>,
    notes: Map<String, Value>,
    start: Instant,
}

impl Checker {
    pub fn new(claim: &str) -> Self {
        Checker {
            claim: claim.to_string(),
            params: Map::new(),
            pass: true,
            checked: 0,
            failures: Vec::new(),
            failure_count: 0,
            comparisons: Vec::new(),
            tags: Vec::new(),
            notes: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), json!(value));
        self
    }

    /// A named comparison that is always recorded in `details.comparisons`.
    pub fn compare(&mut self, name: &str, left: impl Serialize, right: impl Serialize, equal: bool) {
        self.comparisons
            .push(json!({"name": name, "left": left, "right": right, "equal": equal}));
        self.check(equal, || json!({"name": name}));
    }

    /// One of many bulk comparisons; only failures are recorded.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.pass = false;
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Record a failure that is not a comparison (e.g. a sub-step error).
    pub fn fail(&mut self, why: Value) {
        self.check(false, || why);
    }

    pub fn tag(&mut self, tag: &str) {
        if !self.tags.iter().any(|t| t == tag) {
            self.tags.push(tag.to_string());
        }
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.notes.insert(key.to_string(), json!(value));
    }

    pub fn finish(self) -> VerificationReport {
        let mut details = self.notes;
        details.insert("checked".into(), json!(self.checked));
        details.insert("failure_count".into(), json!(self.failure_count));
        details.insert("failures".into(), Value::Array(self.failures));
        details.insert("comparisons".into(), Value::Array(self.comparisons));
        details.insert("tags".into(), json!(self.tags));
        VerificationReport {
            claim: self.claim,
            params: self.params,
            pass: self.pass,
            details: Value::Object(details),
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EigenMultiplicity {
    pub value: i64,
    pub multiplicity: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    RankTrace,
    Jacobi,
    Charpoly,
}

/// Exact eigenvalue multiplicities of one matrix.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub kind: MatrixKind,
    pub param: u64,
    pub dimension: usize,
    /// Ascending by value; zero multiplicities omitted.
    pub spectrum: Vec<EigenMultiplicity>,
    pub method: SpectrumMethod,
    /// Largest `|numeric - exact|` eigenvalue deviation, when the Jacobi
    /// cross-check ran.
    pub max_residual: Option<f64>,
    /// Off-diagonal Frobenius norm Jacobi stopped at.
    pub max_offdiag: Option<f64>,
    pub rank: usize,
    pub trace: Int,
    /// True when the squared-matrix identity was checked in floating point.
    pub float_only: bool,
}

impl SpectrumReport {
    pub fn multiplicity(&self, value: i64) -> u64 {
        self.spectrum
            .iter()
            .find(|e| e.value == value)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn as_map(&self) -> BTreeMap<i64, u64> {
        self.spectrum.iter().map(|e| (e.value, e.multiplicity)).collect()
    }
}

/// Complex coefficients `a_1, ..., a_x` for the large-sieve quadratic form.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector(Vec<num_complex::Complex64>);

impl CoefficientVector {
    pub fn new(entries: Vec<num_complex::Complex64>) -> crate::Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(crate::Error::domain("coefficient vector has non-finite entries"));
        }
        Ok(CoefficientVector(entries))
    }

    /// Uniform points in the closed unit disk from a seeded ChaCha stream.
    pub fn random(len: usize, seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..len)
            .map(|_| {
                let r = rng.gen::<f64>().sqrt();
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                num_complex::Complex64::from_polar(r, theta)
            })
            .collect();
        CoefficientVector(entries)
    }

    pub fn entries(&self) -> &[num_complex::Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
