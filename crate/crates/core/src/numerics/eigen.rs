use alloc::vec;
use alloc::vec::Vec;

use super::SymMatrix;

const MAX_SWEEPS: usize = 50;
/// Off-diagonal Frobenius norm, relative to the full norm, at which sweeping stops.
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Spectral decomposition `A = V Λ Vᵀ` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` pairs with `eigenvalues[i]`. Each vector is
    /// sign-normalized so that its first component of magnitude above
    /// `1e-12` is positive.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `V Λ Vᵀ` with the stored (possibly modified) eigenvalues.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.dim();
        SymMatrix::from_upper_fn(n, |i, j| {
            self.eigenvalues
                .iter()
                .zip(&self.eigenvectors)
                .map(|(l, v)| l * v[i] * v[j])
                .sum()
        })
    }
}

/// Cyclic Jacobi eigensolver.
///
/// Each rotation zeroes one off-diagonal pair; sweeps continue until the
/// off-diagonal mass is negligible relative to the matrix norm, or
/// `MAX_SWEEPS` is reached.
pub fn eigh(a: &SymMatrix) -> EigenDecomposition {
    let n = a.dim();
    let mut m: Vec<f64> = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let total: f64 = m.iter().map(|x| x * x).sum::<f64>();
    let threshold = OFF_DIAGONAL_TOL * libm::sqrt(total);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * m[p * n + q] * m[p * n + q])
            .sum();
        if libm::sqrt(off) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + j]).collect();
            if let Some(first) = col.iter().find(|x| x.abs() > 1e-12) {
                if *first < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            (m[j * n + j], col)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    EigenDecomposition { eigenvalues, eigenvectors }
}

/// Number of eigenvalues with `|λ| > tol`.
pub fn rank(a: &SymMatrix, tol: f64) -> usize {
    eigh(a).eigenvalues.iter().filter(|l| l.abs() > tol).count()
}
