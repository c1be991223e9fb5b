//! Exact arithmetic in the cyclotomic integers `Z[zeta_q]`.
//!
//! An element is stored in the group ring `Z[x]/(x^q - 1)`: a coefficient
//! for each power `zeta_q^j`, `0 <= j < q`. That form is not canonical
//! (`1 + zeta_2` is zero, for instance), so equality goes through
//! [`CycloElem::is_zero`], which reduces modulo the `q`-th cyclotomic
//! polynomial. Sums of roots of unity are sparse in this basis, so only the
//! nonzero coefficients are kept; [`CycloElem::coeffs`] gives the dense
//! length-`q` vector.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{check_guard, Error, Result};
use crate::int::Int;
use crate::numtheory::{divisors, mobius, reduce_mod};

/// Largest order accepted by the public [`cyclo_poly`] entry point.
pub const CYCLO_POLY_MAX_ORDER: u64 = 1024;

/// The monic `q`-th cyclotomic polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPoly {
    order: usize,
    coeffs: Vec<Int>,
}

impl CycloPoly {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::poly::fmt_poly(f, &self.coeffs, "x")
    }
}

/// `q`-th cyclotomic polynomial, for `1 <= q <= 1024`.
pub fn cyclo_poly(q: u64) -> Result<Arc<CycloPoly>> {
    if q == 0 {
        return Err(Error::domain("cyclotomic order must be positive"));
    }
    check_guard("cyclotomic order", q, CYCLO_POLY_MAX_ORDER)?;
    Ok(cached_poly(q as usize))
}

fn cached_poly(order: usize) -> Arc<CycloPoly> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycloPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&order) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute_poly(order));
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert(poly)
        .clone()
}

/// `Phi_q(x) = prod_{d | q} (x^d - 1)^{mu(q/d)}`: multiply in the `mu = 1`
/// factors first, then divide out the `mu = -1` ones exactly.
fn compute_poly(q: usize) -> CycloPoly {
    let ds = divisors(q as u64);
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for &d in &ds {
        if mobius(q as u64 / d) == 1 {
            let d = d as usize;
            let mut next = vec![BigInt::zero(); p.len() + d];
            for (i, c) in p.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            p = next;
        }
    }
    for &d in &ds {
        if mobius(q as u64 / d) == -1 {
            p = div_x_pow_minus_one(&p, d as usize);
        }
    }
    debug_assert!(p.last().is_some_and(|c| c.is_one()));
    CycloPoly {
        order: q,
        coeffs: p.into_iter().map(Int::from).collect(),
    }
}

/// Exact quotient `p / (x^d - 1)`; panics if the division leaves a remainder.
fn div_x_pow_minus_one(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let n = p.len() - 1;
    assert!(n >= d);
    // p = s * x^d - s, so s_i = s_{i-d} - p_i.
    let mut s: Vec<BigInt> = Vec::with_capacity(n - d + 1);
    for i in 0..=(n - d) {
        let prev = if i >= d { s[i - d].clone() } else { BigInt::zero() };
        s.push(prev - &p[i]);
    }
    for i in (n - d + 1)..=n {
        let expect = if i >= d { s[i - d].clone() } else { BigInt::zero() };
        let lower = if i <= n - d { s[i].clone() } else { BigInt::zero() };
        assert_eq!(p[i], expect - lower, "x^{d} - 1 does not divide");
    }
    s
}

/// An element of `Z[zeta_order]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    order: usize,
    /// `(exponent, coefficient)`, strictly increasing exponents, no zero coefficients.
    terms: Vec<(u32, Int)>,
}

impl CycloElem {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1 && order <= u32::MAX as usize, "invalid cyclotomic order {order}");
        CycloElem { order, terms: Vec::new() }
    }

    pub fn constant(order: usize, c: impl Into<Int>) -> Self {
        let c = c.into();
        let mut e = Self::zero(order);
        if !c.is_zero() {
            e.terms.push((0, c));
        }
        e
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, 1)
    }

    /// `zeta_q^e`, any integer exponent.
    pub fn root_power(q: u64, e: i64) -> Self {
        let mut r = Self::zero(q as usize);
        r.terms.push((reduce_mod(e, q) as u32, Int::ONE));
        r
    }

    /// From a dense coefficient vector of any length (indices taken mod `order`).
    pub fn from_coeffs<I>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Int>,
    {
        let mut buf = vec![Int::ZERO; order];
        for (i, c) in coeffs.into_iter().enumerate() {
            buf[i % order] += &c.into();
        }
        Self::from_dense(order, buf)
    }

    /// `sum_j zeta^{e_j}` over the given exponents, which are reduced mod `order`.
    pub fn sum_of_roots<I: IntoIterator<Item = u64>>(order: usize, exponents: I) -> Self {
        let n = order as u64;
        let mut exps: Vec<u32> = exponents.into_iter().map(|e| (e % n) as u32).collect();
        exps.sort_unstable();
        let mut e = Self::zero(order);
        for chunk in exps.chunk_by(|a, b| a == b) {
            e.terms.push((chunk[0], Int::from(chunk.len() as i64)));
        }
        e
    }

    /// Collect the nonzero entries of a dense scratch buffer, leaving it all zero.
    pub(crate) fn drain_buffer(buf: &mut [Int]) -> Self {
        let mut e = Self::zero(buf.len());
        for (i, c) in buf.iter_mut().enumerate() {
            if !c.is_zero() {
                e.terms.push((i as u32, std::mem::take(c)));
            }
        }
        e
    }

    pub(crate) fn from_dense(order: usize, buf: Vec<Int>) -> Self {
        let mut e = Self::zero(order);
        e.terms = buf
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
            .collect();
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Nonzero `(exponent, coefficient)` pairs, exponents ascending.
    pub fn terms(&self) -> &[(u32, Int)] {
        &self.terms
    }

    /// Dense coefficient vector of length `order`.
    pub fn coeffs(&self) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.order];
        for (e, c) in &self.terms {
            out[*e as usize] = c.clone();
        }
        out
    }

    /// True when every stored coefficient is zero (a sufficient, not a
    /// necessary, condition for the element to vanish).
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        CycloElem { order: self.order, terms: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.merge(other, true))
    }

    /// Cyclic convolution of the coefficient vectors.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut buf = vec![Int::ZERO; self.order];
        mul_acc(&mut buf, &self.terms, &other.terms, 0);
        Ok(Self::from_dense(self.order, buf))
    }

    pub fn scale(&self, c: &Int) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        CycloElem {
            order: self.order,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            order: self.order,
            terms: self.terms.iter().map(|(e, a)| (*e, -a)).collect(),
        }
    }

    /// Multiply by `zeta^k`.
    pub fn shift(&self, k: i64) -> Self {
        let n = self.order as u64;
        let k = reduce_mod(k, n);
        let mut terms: Vec<(u32, Int)> = self
            .terms
            .iter()
            .map(|(e, c)| (((u64::from(*e) + k) % n) as u32, c.clone()))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        CycloElem { order: self.order, terms }
    }

    /// Complex conjugate, `zeta^j -> zeta^{-j}`.
    pub fn conj(&self) -> Self {
        self.shift_map(|e, n| (n - e) % n)
    }

    fn shift_map(&self, f: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.order as u64;
        let mut terms: Vec<(u32, Int)> = self
            .terms
            .iter()
            .map(|(e, c)| (f(u64::from(*e), n) as u32, c.clone()))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        CycloElem { order: self.order, terms }
    }

    /// View in `Z[zeta_new_order]` via `zeta_q = zeta_new^(new/q)`; `q` must divide `new_order`.
    pub fn lift(&self, new_order: usize) -> Result<Self> {
        if new_order % self.order != 0 {
            return Err(Error::OrderMismatch { left: self.order, right: new_order });
        }
        let step = (new_order / self.order) as u32;
        Ok(CycloElem {
            order: new_order,
            terms: self.terms.iter().map(|(e, c)| (e * step, c.clone())).collect(),
        })
    }

    /// Remainder of the coefficient polynomial modulo `Phi_order`, length `phi(order)`.
    pub fn reduced(&self) -> Vec<Int> {
        let poly = cached_poly(self.order);
        let deg = poly.degree();
        let mut buf = self.coeffs();
        let phi = poly.coeffs();
        for i in (deg..self.order).rev() {
            if buf[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut buf[i]);
            let neg = -&c;
            for (j, p) in phi[..deg].iter().enumerate() {
                if !p.is_zero() {
                    buf[i - deg + j].add_product(&neg, p);
                }
            }
        }
        buf.truncate(deg);
        buf
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.reduced().iter().all(Int::is_zero)
    }

    /// Exact equality in `Z[zeta_q]`.
    pub fn eq_exact(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<Int> {
        // Phi_1 = x - 1 has degree 1, so the remainder is itself a constant;
        // for order >= 2 the basis 1, x, ... , x^{phi-1} starts at 1.
        let r = self.reduced();
        match r.split_first() {
            None => Some(Int::ZERO),
            Some((c, rest)) => rest.iter().all(Int::is_zero).then(|| c.clone()),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|c| c.to_i64())
    }

    /// Is this element fixed by complex conjugation?
    pub fn is_real(&self) -> bool {
        self.sub(&self.conj()).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Double-precision value; error is at most about `order * max|coeff| * 1e-14`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
            let (s, co) = (TAU * f64::from(*e) / n).sin_cos();
            acc + Complex64::new(co, s) * c.to_f64()
        })
    }

    /// L1 norm of the stored coefficients.
    pub fn l1(&self) -> Int {
        self.terms.iter().fold(Int::ZERO, |acc, (_, c)| &acc + &c.abs())
    }
}

/// `buf[(e1 + e2 + shift) mod n] += c1 * c2` over all term pairs.
#[inline]
pub(crate) fn mul_acc(buf: &mut [Int], a: &[(u32, Int)], b: &[(u32, Int)], shift: usize) {
    let n = buf.len();
    for (e1, c1) in a {
        let base = *e1 as usize + shift;
        for (e2, c2) in b {
            let mut idx = base + *e2 as usize;
            while idx >= n {
                idx -= n;
            }
            buf[idx].add_product(c1, c2);
        }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{e}", self.order)?;
            }
        }
        Ok(())
    }
}
