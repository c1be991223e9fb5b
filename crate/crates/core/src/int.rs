//! Arbitrary-precision integers with an inline fast path.
//!
//! Nearly every coefficient that shows up in the matrix kernels fits in a
//! machine word, so [`Int`] keeps those inline and only spills to a heap
//! [`BigInt`] when a checked machine operation overflows. Values are kept
//! normalized: `Big` never holds something that fits in an `i64`, which
//! makes the derived equality exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    /// `self += a * b`, the inner step of every exact product kernel.
    #[inline]
    pub fn add_product(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        let r = self.to_bigint() + a.to_bigint() * b.to_bigint();
        *self = Int::from_big(r);
    }

    /// `self += a * k` for a machine-word multiplier.
    #[inline]
    pub fn add_scaled(&mut self, a: &Int, k: i64) {
        if let (Int::Small(s), Int::Small(x)) = (&*self, a) {
            if let Some(p) = x.checked_mul(k) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        let r = self.to_bigint() + a.to_bigint() * BigInt::from(k);
        *self = Int::from_big(r);
    }

    /// Exact division; `None` when `d` does not divide `self` or `d` is zero.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return None;
        }
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (r == 0).then_some(Int::Small(q));
            }
        }
        let (a, b) = (self.to_bigint(), d.to_bigint());
        let r = &a % &b;
        r.is_zero().then(|| Int::from_big(a / b))
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_bigint()
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&*self, rhs) {
            if let Some(r) = a.checked_add(*b) {
                *self = Int::Small(r);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() + rhs.to_bigint());
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&*self, rhs) {
            if let Some(r) = a.checked_sub(*b) {
                *self = Int::Small(r);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() - rhs.to_bigint());
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Word-sized values serialize as JSON numbers, anything larger as a
/// decimal string so nothing is silently rounded.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::Small(i64::MAX);
        let sum = &big + &Int::ONE;
        assert!(matches!(sum, Int::Big(_)));
        let back = &sum - &Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));

        let sq = &big * &big;
        assert_eq!(sq.to_bigint(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        assert_eq!(sq.div_exact(&big), Some(big.clone()));
    }

    #[test]
    fn add_product_spills() {
        let mut acc = Int::Small(i64::MAX - 1);
        acc.add_product(&Int::Small(2), &Int::Small(3));
        assert_eq!(acc.to_bigint(), BigInt::from(i64::MAX) + BigInt::from(5));
        acc.add_product(&Int::Small(-1), &Int::Small(6));
        assert_eq!(acc, Int::Small(i64::MAX - 1));
    }

    #[test]
    fn min_value_edge() {
        let m = Int::Small(i64::MIN);
        assert_eq!((-&m).to_bigint(), -BigInt::from(i64::MIN));
        assert_eq!(m.abs().to_bigint(), BigInt::from(i64::MIN).abs());
        assert_eq!(m.div_exact(&Int::Small(-1)).unwrap().to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn div_exact_rejects_remainder() {
        assert_eq!(Int::Small(7).div_exact(&Int::Small(2)), None);
        assert_eq!(Int::Small(8).div_exact(&Int::Small(0)), None);
        assert_eq!(Int::Small(-8).div_exact(&Int::Small(2)), Some(Int::Small(-4)));
    }
}
