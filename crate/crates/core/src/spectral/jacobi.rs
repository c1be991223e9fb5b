//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use std::collections::BTreeMap;

use crate::error::{check_guard, Error, Result};

pub const JACOBI_MAX_DIM: u64 = 1024;
pub const JACOBI_MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-9;
const RELATIVE_OFF_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct JacobiResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Off-diagonal Frobenius norm at exit.
    pub off_norm: f64,
    pub frobenius: f64,
    pub sweeps: usize,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of the row-major symmetric matrix `matrix` of order `n`.
///
/// Sweeps rotate every `(p, q)` pair in row order until the off-diagonal
/// norm drops below `1e-12` times the Frobenius norm.
pub fn jacobi_eigen(matrix: &[f64], n: usize) -> Result<JacobiResult> {
    check_guard("jacobi dimension", n as u64, JACOBI_MAX_DIM)?;
    if matrix.len() != n * n {
        return Err(Error::domain(format!("{} entries for a {n}x{n} matrix", matrix.len())));
    }
    for i in 0..n {
        for j in 0..i {
            if (matrix[i * n + j] - matrix[j * n + i]).abs() > SYMMETRY_TOL {
                return Err(Error::domain(format!("matrix not symmetric at ({i}, {j})")));
            }
        }
    }
    let mut a = matrix.to_vec();
    let frobenius = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = RELATIVE_OFF_TOL * frobenius;

    let mut sweeps = 0;
    let mut off = off_norm(&a, n);
    while off > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
        off = off_norm(&a, n);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(JacobiResult { eigenvalues, off_norm: off, frobenius, sweeps })
}

/// Snap each eigenvalue to the nearest target within `tol`. Returns the
/// multiplicity of each target and the largest deviation, or `None` if some
/// eigenvalue is not within `tol` of any target.
pub fn cluster_eigenvalues(
    eigenvalues: &[f64],
    targets: &[i64],
    tol: f64,
) -> Option<(BTreeMap<i64, u64>, f64)> {
    let mut counts: BTreeMap<i64, u64> = targets.iter().map(|&t| (t, 0)).collect();
    let mut worst = 0.0f64;
    for &ev in eigenvalues {
        let (t, dev) = targets
            .iter()
            .map(|&t| (t, (ev - t as f64).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if dev > tol {
            return None;
        }
        worst = worst.max(dev);
        *counts.get_mut(&t).unwrap() += 1;
    }
    Some((counts, worst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let r = jacobi_eigen(&[1.0, -1.0, -1.0, 1.0], 2).unwrap();
        assert!((r.eigenvalues[0]).abs() < 1e-14);
        assert!((r.eigenvalues[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn one_by_one_and_diagonal() {
        let r = jacobi_eigen(&[7.0], 1).unwrap();
        assert_eq!(r.eigenvalues, vec![7.0]);
        assert_eq!(r.sweeps, 0);
        let r = jacobi_eigen(&[3.0, 0.0, 0.0, -1.0], 2).unwrap();
        assert_eq!(r.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn rejects_asymmetric_and_oversized() {
        assert!(matches!(jacobi_eigen(&[1.0, 2.0, 0.0, 1.0], 2), Err(Error::Domain(_))));
        assert!(matches!(jacobi_eigen(&[], 1025), Err(Error::Guard { .. })));
    }

    #[test]
    fn tridiagonal_laplacian() {
        // Path-graph Laplacian-like matrix 2 on the diagonal, -1 off it:
        // eigenvalues 2 - 2 cos(k pi / (n + 1)).
        let n = 12;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 2.0;
            if i + 1 < n {
                a[i * n + i + 1] = -1.0;
                a[(i + 1) * n + i] = -1.0;
            }
        }
        let r = jacobi_eigen(&a, n).unwrap();
        let mut want: Vec<f64> = (1..=n)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (got, w) in r.eigenvalues.iter().zip(&want) {
            assert!((got - w).abs() < 1e-12);
        }
        assert!(r.off_norm <= 1e-12 * r.frobenius);
    }

    #[test]
    fn clustering() {
        let (counts, worst) = cluster_eigenvalues(&[-5.0 + 1e-10, 0.0, 5.0, 5.0, 5.0], &[-5, 0, 5], 1e-6).unwrap();
        assert_eq!(counts[&5], 3);
        assert_eq!(counts[&-5], 1);
        assert!(worst < 2e-10);
        assert!(cluster_eigenvalues(&[2.5], &[0, 5], 1e-6).is_none());
    }
}
