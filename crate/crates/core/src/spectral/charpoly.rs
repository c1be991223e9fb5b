//! Exact characteristic polynomials of small integer matrices by cofactor
//! expansion, memoized over column subsets.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_guard, Result};
use crate::matrices::IntMatrix;
use crate::poly::{self, IntPoly};

pub const CHARPOLY_MAX_DIM: u64 = 10;

/// `det(lambda I - m)`, coefficients lowest degree first.
pub fn char_poly_small(m: &IntMatrix) -> Result<IntPoly> {
    let n = m.dim();
    check_guard("charpoly dimension", n as u64, CHARPOLY_MAX_DIM)?;
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let entry = |i: usize, j: usize| -> IntPoly {
        let c = BigInt::from(-m.get(i, j));
        if i == j {
            vec![c, BigInt::one()]
        } else {
            poly::trim(vec![c])
        }
    };
    // minors[s] = determinant of rows (n - |s|).. restricted to the columns in s.
    let full = (1usize << n) - 1;
    let mut minors: Vec<IntPoly> = vec![Vec::new(); full + 1];
    minors[0] = vec![BigInt::one()];
    let mut by_size: Vec<usize> = (1..=full).collect();
    by_size.sort_by_key(|s| s.count_ones());
    for s in by_size {
        let row = n - s.count_ones() as usize;
        let mut acc: IntPoly = Vec::new();
        for (pos, j) in (0..n).filter(|j| s & (1 << j) != 0).enumerate() {
            let e = entry(row, j);
            let rest = &minors[s & !(1 << j)];
            if e.is_empty() || rest.is_empty() {
                continue;
            }
            let term = poly::mul(&e, rest);
            acc = if pos % 2 == 0 { poly::add(&acc, &term) } else { poly::add(&acc, &poly::neg(&term)) };
        }
        minors[s] = acc;
    }
    let out = std::mem::take(&mut minors[full]);
    debug_assert!(out.last().is_some_and(|c| c.is_one()) && !out.iter().all(Zero::is_zero));
    Ok(out)
}
