use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{dot, norm};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;
/// Singular values below this fraction of the largest are treated as zero
/// when solving.
const RCOND: f64 = 1e-10;

/// Result of a linear least-squares solve.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    /// Minimum-norm minimizer of `‖A x − b‖`.
    pub solution: Vec<f64>,
    /// `‖A x − b‖₂` at the solution.
    pub residual: f64,
    pub rank: usize,
    /// More than one minimizer exists; `solution` is the minimum-norm one.
    pub rank_deficient: bool,
}

/// Thin SVD by one-sided (Hestenes) Jacobi: returns the columns `A V`
/// (mutually orthogonal, norms are the singular values) and `V`.
fn one_sided_jacobi(rows: &[Vec<f64>], ncols: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut cols: Vec<Vec<f64>> =
        (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..ncols)
        .map(|j| {
            let mut e = vec![0.0; ncols];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..ncols {
            for j in (i + 1)..ncols {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(&mut cols, i, j, c, s);
                rotate(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    (cols, v)
}

fn rotate(vs: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    for k in 0..vs[i].len() {
        let a = vs[i][k];
        let b = vs[j][k];
        vs[i][k] = c * a - s * b;
        vs[j][k] = s * a + c * b;
    }
}

fn check_rows(rows: &[Vec<f64>]) -> Result<usize> {
    let first = rows.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
    }
    Ok(n)
}

/// Minimizes `Σ (rowᵢ · x − rhsᵢ)²` through a Jacobi SVD of the row matrix.
pub fn solve_least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Result<LeastSquares> {
    let n = check_rows(rows)?;
    if rhs.len() != rows.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), found: rhs.len() });
    }
    let (cols, v) = one_sided_jacobi(rows, n);
    let sigmas: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let sigma_max = sigmas.iter().cloned().fold(0.0, f64::max);
    let cutoff = RCOND * sigma_max;

    let mut x = vec![0.0; n];
    let mut rank = 0;
    for ((col, vk), &sigma) in cols.iter().zip(&v).zip(&sigmas) {
        if sigma == 0.0 || sigma <= cutoff {
            continue;
        }
        rank += 1;
        let coeff = dot(col, rhs) / (sigma * sigma);
        for (xi, vi) in x.iter_mut().zip(vk) {
            *xi += coeff * vi;
        }
    }

    let residual = libm::sqrt(
        rows.iter().zip(rhs).map(|(r, b)| {
            let d = dot(r, &x) - b;
            d * d
        }).sum::<f64>(),
    );
    Ok(LeastSquares { solution: x, residual, rank, rank_deficient: rank < n })
}

/// Number of singular values of the row matrix above `tol`.
pub fn matrix_rank(rows: &[Vec<f64>], tol: f64) -> Result<usize> {
    let n = check_rows(rows)?;
    let (cols, _) = one_sided_jacobi(rows, n);
    Ok(cols.iter().filter(|c| norm(c) > tol).count())
}
