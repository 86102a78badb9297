//! Density operators, projectors and the Born rule on real Hilbert spaces.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::numerics::{eigh, norm, EigenDecomposition, SymMatrix};
use crate::{Error, Result, DEFAULT_TOL};

/// How far `‖x‖` may stray from 1 before [`StateVector::new`] refuses to
/// renormalize.
const NORMALIZATION_SLACK: f64 = 1e-6;

/// A unit vector representing a pure state `|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    components: Vec<f64>,
}

impl StateVector {
    /// Accepts an (almost) normalized vector and renormalizes it exactly.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        let len = norm(&components);
        if !len.is_finite() || (len - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(Error::NotNormalized { norm: len });
        }
        Ok(Self::scaled(components, len))
    }

    /// Normalizes any nonzero vector (the ray it spans).
    pub fn normalized(components: Vec<f64>) -> Result<Self> {
        let len = norm(&components);
        if len == 0.0 || !len.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self::scaled(components, len))
    }

    fn scaled(mut components: Vec<f64>, len: f64) -> Self {
        components.iter_mut().for_each(|c| *c /= len);
        StateVector { components }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

/// An orthogonal projector `E = E² = Eᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: SymMatrix,
    rank_hint: usize,
}

impl Projector {
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        let deviation = matrix.square().max_abs_diff(&matrix);
        if deviation > DEFAULT_TOL {
            return Err(Error::NotAProjector { deviation });
        }
        let rank_hint = libm::round(matrix.trace()) as usize;
        Ok(Projector { matrix, rank_hint })
    }

    /// Rank-one projector onto the ray spanned by `x`.
    pub fn onto(x: &StateVector) -> Self {
        Projector { matrix: SymMatrix::outer(x.components()), rank_hint: 1 }
    }

    /// Projector onto the span of an orthonormal family.
    pub fn onto_orthonormal(vectors: &[StateVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyInput)?;
        let mut m = SymMatrix::zeros(first.dim());
        for v in vectors {
            m = m.add(&SymMatrix::outer(v.components()))?;
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn rank_hint(&self) -> usize {
        self.rank_hint
    }
}

/// Symmetric, positive-semidefinite, unit-trace operator.
///
/// Eigenvalues in `[-tol, 0)` are treated as roundoff and clamped to zero;
/// anything more negative rejects construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: SymMatrix,
}

/// Output of [`purity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Purity {
    pub is_pure: bool,
    pub tr_rho_sq: f64,
}

impl DensityOperator {
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        Self::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: SymMatrix, tol: f64) -> Result<Self> {
        let trace = matrix.trace();
        if (trace - 1.0).abs() > tol {
            return Err(Error::BadTrace { trace });
        }
        let mut eig = eigh(&matrix);
        let min_eigenvalue = eig.min_eigenvalue();
        if min_eigenvalue < -tol {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        if min_eigenvalue < 0.0 {
            eig.eigenvalues.iter_mut().for_each(|l| *l = l.max(0.0));
            return Ok(DensityOperator { matrix: eig.reconstruct() });
        }
        Ok(DensityOperator { matrix })
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The maximally mixed state `1/n`.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator { matrix: SymMatrix::identity(dim).scale(1.0 / dim as f64) }
    }

    pub fn eigen(&self) -> EigenDecomposition {
        eigh(&self.matrix)
    }
}

/// `|ψ⟩⟨ψ| = x xᵀ`.
pub fn pure_state(x: &StateVector) -> DensityOperator {
    DensityOperator { matrix: SymMatrix::outer(x.components()) }
}

/// Convex combination `Σ pᵢ ρᵢ`.
pub fn mix(components: &[(f64, DensityOperator)]) -> Result<DensityOperator> {
    let (_, first) = components.first().ok_or(Error::EmptyInput)?;
    let sum: f64 = components.iter().map(|(w, _)| w).sum();
    if components.iter().any(|(w, _)| !(*w >= 0.0)) || (sum - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::BadWeights { sum });
    }
    let mut acc = SymMatrix::zeros(first.dim());
    for (w, rho) in components {
        acc = acc.add(&rho.matrix.scale(*w))?;
    }
    DensityOperator::new(acc)
}

/// `tr(ρ E)`, clamped to `[0, 1]`.
pub fn born_probability(rho: &DensityOperator, e: &Projector) -> Result<f64> {
    let p = rho.matrix.trace_product(&e.matrix)?;
    Ok(p.clamp(0.0, 1.0))
}

pub fn purity(rho: &DensityOperator) -> Purity {
    let sq = rho.matrix.square();
    Purity {
        is_pure: sq.max_abs_diff(&rho.matrix) <= DEFAULT_TOL,
        tr_rho_sq: sq.trace(),
    }
}

/// Spectral decomposition read as a mixture of orthogonal pure states.
///
/// Only weights above `1e-9` are kept. Ordered by descending weight; equal
/// weights are ordered by lexicographic comparison of their eigenvectors.
/// For degenerate spectra any orthonormal eigenbasis may be returned.
pub fn spectral_mixture(rho: &DensityOperator) -> Vec<(f64, StateVector)> {
    let eig = rho.eigen();
    let mut out: Vec<(f64, StateVector)> = eig
        .eigenvalues
        .into_iter()
        .zip(eig.eigenvectors)
        .filter(|(w, _)| *w > DEFAULT_TOL)
        .map(|(w, v)| (w, StateVector { components: v }))
        .collect();
    out.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= DEFAULT_TOL {
            lexicographic(a.1.components(), b.1.components())
        } else {
            b.0.total_cmp(&a.0)
        }
    });
    out
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}
