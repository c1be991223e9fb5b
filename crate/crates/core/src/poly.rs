//! Dense integer polynomials, lowest degree first. Only what the
//! characteristic-polynomial checks need.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::int::Int;

pub type IntPoly = Vec<BigInt>;

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect();
    trim(out)
}

pub fn neg(a: &[BigInt]) -> IntPoly {
    a.iter().map(|c| -c).collect()
}

pub fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `prod (x - root)^mult`.
pub fn from_roots(roots: &[(i64, u64)]) -> IntPoly {
    let mut p = vec![BigInt::one()];
    for &(root, mult) in roots {
        let factor = vec![BigInt::from(-root), BigInt::one()];
        for _ in 0..mult {
            p = mul(&p, &factor);
        }
    }
    p
}

pub(crate) fn fmt_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Int], var: &str) -> fmt::Result {
    let big: Vec<BigInt> = coeffs.iter().map(Int::to_bigint).collect();
    write!(f, "{}", Display { coeffs: &big, var })
}

/// Human-readable rendering, highest degree first: `x^2 - x + 1`.
pub struct Display<'a> {
    pub coeffs: &'a [BigInt],
    pub var: &'a str,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || deg == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{deg}", self.var)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
