use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::diagram::{validate_state, GreechieDiagram, ProbabilityAssignment, Validation};
use crate::density::DensityOperator;
use crate::numerics::{dot, eigh, norm, solve_least_squares, SymMatrix};
use crate::{Error, Result, DEFAULT_TOL};

/// Residual and eigenvalue slack for feasibility, one decade looser than
/// construction since it composes two solves.
const FEASIBILITY_TOL: f64 = 1e-8;

/// Rays in `Rⁿ` attached to atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorRealization {
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl VectorRealization {
    /// Stores spanning representatives normalized to unit length.
    pub fn from_spans<S, I>(dim: usize, spans: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, Vec<f64>)>,
    {
        let mut r = VectorRealization { dim, vectors: BTreeMap::new() };
        for (id, v) in spans {
            let len = norm(&v);
            if len == 0.0 || !len.is_finite() {
                return Err(Error::ZeroVector);
            }
            r.insert(id.into(), v.into_iter().map(|x| x / len).collect())?;
        }
        Ok(r)
    }

    /// Stores vectors as given; [`check_realization`] reports non-unit ones.
    pub fn from_vectors<S, I>(dim: usize, vectors: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, Vec<f64>)>,
    {
        let mut r = VectorRealization { dim, vectors: BTreeMap::new() };
        for (id, v) in vectors {
            r.insert(id.into(), v)?;
        }
        Ok(r)
    }

    fn insert(&mut self, id: String, v: Vec<f64>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if self.vectors.contains_key(&id) {
            return Err(Error::DuplicateAtom(id));
        }
        self.vectors.insert(id, v);
        Ok(())
    }

    /// Replaces (or adds) one vector verbatim.
    pub fn with_vector(mut self, id: &str, v: Vec<f64>) -> Result<Self> {
        self.vectors.remove(id);
        self.insert(id.into(), v)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, id: &str) -> Option<&[f64]> {
        self.vectors.get(id).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.vectors.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    fn aligned(&self, d: &GreechieDiagram) -> Result<Vec<&[f64]>> {
        if let Some(k) = self.vectors.keys().find(|k| d.atom_index(k).is_none()) {
            return Err(Error::UnknownAtom(k.clone()));
        }
        d.atoms()
            .iter()
            .map(|a| self.get(a).ok_or_else(|| Error::MissingAtom(a.clone())))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RealizationViolation {
    NotUnit { atom: String, norm: f64 },
    NotOrthogonal { block: usize, first: String, second: String, overlap: f64 },
    BlockTooLarge { block: usize, size: usize, dim: usize },
}

/// Unit norms, pairwise orthogonality inside every block, and block size
/// not above the dimension, all to `1e-9`.
pub fn check_realization(
    d: &GreechieDiagram,
    r: &VectorRealization,
) -> Result<Validation<RealizationViolation>> {
    let vs = r.aligned(d)?;
    let mut out = Vec::new();
    for (atom, v) in d.atoms().iter().zip(&vs) {
        let len = norm(v);
        if !((len - 1.0).abs() <= DEFAULT_TOL) {
            out.push(RealizationViolation::NotUnit { atom: atom.clone(), norm: len });
        }
    }
    for (b, block) in d.blocks().iter().enumerate() {
        if block.len() > r.dim() {
            out.push(RealizationViolation::BlockTooLarge { block: b, size: block.len(), dim: r.dim() });
        }
        for (k, &i) in block.iter().enumerate() {
            for &j in &block[k + 1..] {
                let overlap = dot(vs[i], vs[j]);
                if !(overlap.abs() <= DEFAULT_TOL) {
                    out.push(RealizationViolation::NotOrthogonal {
                        block: b,
                        first: d.atoms()[i].clone(),
                        second: d.atoms()[j].clone(),
                        overlap,
                    });
                }
            }
        }
    }
    Ok(Validation::from_list(out))
}

/// Largest `|u·v|` over pairs of atoms sharing a block.
pub fn max_block_overlap(d: &GreechieDiagram, r: &VectorRealization) -> Result<f64> {
    let vs = r.aligned(d)?;
    let mut worst: f64 = 0.0;
    for block in d.blocks() {
        for (k, &i) in block.iter().enumerate() {
            for &j in &block[k + 1..] {
                worst = worst.max(dot(vs[i], vs[j]).abs());
            }
        }
    }
    Ok(worst)
}

/// Why no density operator reproduces a state on a realization.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// The zero-probability atoms span a subspace of dimension `rank`. A
    /// positive-semidefinite `ρ` must vanish on it, so `rank == dim` forces
    /// `ρ = 0`, contradicting unit trace.
    KernelRank { rank: usize, dim: usize, zero_atoms: Vec<String> },
    /// The linear constraints `vᵀρv = p(v)` are inconsistent; `atom` is the
    /// worst-fitting one in the least-squares solution.
    Residual { atom: String, expected: f64, achieved: f64 },
    /// The trace constraint could not be met.
    Trace { trace: f64 },
    /// The constraints are met only by an indefinite `ρ`.
    NotPositive { min_eigenvalue: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Realizable(DensityOperator),
    NotRealizable(Certificate),
}

impl Feasibility {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Feasibility::Realizable(_))
    }
}

/// Decides whether some density operator `ρ` satisfies `vᵀρv = p(atom)` for
/// every atom.
///
/// Zero-probability atoms first confine `ρ` to the orthogonal complement of
/// their span. On that complement the remaining constraints plus unit trace
/// are solved by least squares and the candidate is checked for residual and
/// positivity. When the constraints leave `ρ` undetermined the minimum
/// Frobenius-norm candidate is the one tested.
pub fn quantum_feasibility(
    d: &GreechieDiagram,
    r: &VectorRealization,
    p: &ProbabilityAssignment,
) -> Result<Feasibility> {
    if !check_realization(d, r)?.is_valid() {
        return Err(Error::InvalidRealization);
    }
    if !validate_state(d, p)?.is_valid() {
        return Err(Error::InvalidState);
    }
    let n = r.dim();
    let vs = r.aligned(d)?;
    let values = p.aligned(d)?;

    let mut kernel = SymMatrix::zeros(n);
    let mut zero_atoms = Vec::new();
    for ((atom, v), &pv) in d.atoms().iter().zip(&vs).zip(&values) {
        if pv <= DEFAULT_TOL {
            kernel = kernel.add(&SymMatrix::outer(v))?;
            zero_atoms.push(atom.clone());
        }
    }
    let eig = eigh(&kernel);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > DEFAULT_TOL).count();
    if rank == n {
        return Ok(Feasibility::NotRealizable(Certificate::KernelRank { rank, dim: n, zero_atoms }));
    }
    let complement: Vec<&Vec<f64>> = eig.eigenvectors[rank..].iter().collect();
    let k = complement.len();

    // Unknowns: upper triangle of the k×k block σ, off-diagonals scaled by √2.
    let s2 = core::f64::consts::SQRT_2;
    let pack = |w: &[f64]| -> Vec<f64> {
        let mut row = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                row.push(if i == j { w[i] * w[i] } else { s2 * w[i] * w[j] });
            }
        }
        row
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (v, &pv) in vs.iter().zip(&values) {
        if pv > DEFAULT_TOL {
            let w: Vec<f64> = complement.iter().map(|q| dot(q, v)).collect();
            rows.push(pack(&w));
            rhs.push(pv);
        }
    }
    let mut trace_row = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            trace_row.push(if i == j { 1.0 } else { 0.0 });
        }
    }
    rows.push(trace_row);
    rhs.push(1.0);

    let sol = solve_least_squares(&rows, &rhs)?.solution;
    let mut sigma = alloc::vec![0.0; k * k];
    let mut idx = 0;
    for i in 0..k {
        for j in i..k {
            let v = if i == j { sol[idx] } else { sol[idx] / s2 };
            sigma[i * k + j] = v;
            sigma[j * k + i] = v;
            idx += 1;
        }
    }
    let rho = SymMatrix::from_upper_fn(n, |a, b| {
        let mut acc = 0.0;
        for i in 0..k {
            for j in 0..k {
                acc += complement[i][a] * sigma[i * k + j] * complement[j][b];
            }
        }
        acc
    });

    let mut worst: Option<(usize, f64, f64)> = None;
    for (a, (v, &pv)) in vs.iter().zip(&values).enumerate() {
        let achieved = rho.quadratic_form(v);
        let err = (achieved - pv).abs();
        if err > FEASIBILITY_TOL && worst.map_or(true, |(_, e, _)| err > e) {
            worst = Some((a, err, achieved));
        }
    }
    if let Some((a, _, achieved)) = worst {
        return Ok(Feasibility::NotRealizable(Certificate::Residual {
            atom: d.atoms()[a].clone(),
            expected: values[a],
            achieved,
        }));
    }
    let trace = rho.trace();
    if (trace - 1.0).abs() > FEASIBILITY_TOL {
        return Ok(Feasibility::NotRealizable(Certificate::Trace { trace }));
    }
    let min_eigenvalue = eigh(&rho).min_eigenvalue();
    if min_eigenvalue < -FEASIBILITY_TOL {
        return Ok(Feasibility::NotRealizable(Certificate::NotPositive { min_eigenvalue }));
    }
    Ok(Feasibility::Realizable(DensityOperator::with_tol(rho, FEASIBILITY_TOL)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greechie::{
        builtin_spin_half_family, builtin_wright_pentagon, spin_half_ignorant_measure,
        spin_half_sharp_measure,
    };
    use alloc::vec;

    #[test]
    fn pentagon_embedding_is_valid() {
        let (d, r, _) = builtin_wright_pentagon();
        assert!(check_realization(&d, &r).unwrap().is_valid());
        assert!(max_block_overlap(&d, &r).unwrap() < 1e-15);
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let (d, r, _) = builtin_wright_pentagon();
        let mut b0 = r.get("b0").unwrap().to_vec();
        b0[0] += 0.01;
        let len = norm(&b0);
        b0.iter_mut().for_each(|x| *x /= len);
        let r = r.with_vector("b0", b0).unwrap();
        let v = check_realization(&d, &r).unwrap();
        assert!(!v.is_valid());
        assert!(v.violations().iter().all(|x| matches!(
            x,
            RealizationViolation::NotOrthogonal { block: 0, first, second, .. }
                if first == "b0" || second == "b0"
        )));
    }

    #[test]
    fn unit_norm_and_block_size_checks() {
        let d = GreechieDiagram::new(["a", "b", "c"], vec![vec!["a", "b", "c"]]).unwrap();
        let r = VectorRealization::from_vectors(
            2,
            [("a", vec![2.0, 0.0]), ("b", vec![0.0, 1.0]), ("c", vec![0.0, 0.0])],
        )
        .unwrap();
        let v = check_realization(&d, &r).unwrap();
        assert!(v.violations().contains(&RealizationViolation::BlockTooLarge {
            block: 0,
            size: 3,
            dim: 2
        }));
        assert!(v
            .violations()
            .iter()
            .any(|x| matches!(x, RealizationViolation::NotUnit { atom, .. } if atom == "a")));
    }

    #[test]
    fn realization_errors() {
        let d = GreechieDiagram::new(["a", "b"], vec![vec!["a", "b"]]).unwrap();
        assert!(matches!(
            VectorRealization::from_spans(2, [("a", vec![1.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        let r = VectorRealization::from_spans(2, [("a", vec![1.0, 0.0])]).unwrap();
        assert_eq!(check_realization(&d, &r), Err(Error::MissingAtom("b".into())));
        let r = VectorRealization::from_spans(
            2,
            [("a", vec![1.0, 0.0]), ("b", vec![0.0, 1.0]), ("q", vec![1.0, 1.0])],
        )
        .unwrap();
        assert_eq!(check_realization(&d, &r), Err(Error::UnknownAtom("q".into())));
    }

    #[test]
    fn rotated_bases_are_valid() {
        let (d, r) = builtin_spin_half_family(3, &[0.1, 0.7, 2.0]).unwrap();
        assert!(check_realization(&d, &r).unwrap().is_valid());
    }

    #[test]
    fn most_ignorant_state() {
        for angles in [vec![0.0], vec![0.0, core::f64::consts::FRAC_PI_4], vec![0.2, 0.9, 1.3]] {
            let n = angles.len();
            let (d, r) = builtin_spin_half_family(n, &angles).unwrap();
            let Feasibility::Realizable(rho) =
                quantum_feasibility(&d, &r, &spin_half_ignorant_measure(n)).unwrap()
            else {
                panic!("expected realizable")
            };
            assert!(rho.matrix().max_abs_diff(&SymMatrix::from_diagonal(&[0.5, 0.5])) < 1e-12);
        }
    }

    #[test]
    fn sharp_two_direction_measure_is_not_realizable() {
        let (d, r) = builtin_spin_half_family(2, &[0.0, core::f64::consts::FRAC_PI_4]).unwrap();
        let out = quantum_feasibility(&d, &r, &spin_half_sharp_measure(2)).unwrap();
        assert!(matches!(
            out,
            Feasibility::NotRealizable(Certificate::KernelRank { rank: 2, dim: 2, .. })
        ));
    }

    #[test]
    fn sharp_single_direction_is_a_pure_state() {
        let (d, r) = builtin_spin_half_family(1, &[0.4]).unwrap();
        let Feasibility::Realizable(rho) =
            quantum_feasibility(&d, &r, &spin_half_sharp_measure(1)).unwrap()
        else {
            panic!("expected realizable")
        };
        let x = r.get("x-1").unwrap();
        assert!(rho.matrix().max_abs_diff(&SymMatrix::outer(x)) < 1e-12);
    }

    #[test]
    fn inconsistent_constraints_give_residual_certificate() {
        // Same basis twice with different weights on the same rays.
        let d = GreechieDiagram::new(
            ["u", "v", "u2", "v2"],
            vec![vec!["u", "v"], vec!["u2", "v2"]],
        )
        .unwrap();
        let r = VectorRealization::from_spans(
            2,
            [
                ("u", vec![1.0, 0.0]),
                ("v", vec![0.0, 1.0]),
                ("u2", vec![1.0, 0.0]),
                ("v2", vec![0.0, 1.0]),
            ],
        )
        .unwrap();
        let p: ProbabilityAssignment =
            [("u", 0.3), ("v", 0.7), ("u2", 0.6), ("v2", 0.4)].into_iter().collect();
        let out = quantum_feasibility(&d, &r, &p).unwrap();
        assert!(matches!(out, Feasibility::NotRealizable(Certificate::Residual { .. })));
    }

    #[test]
    fn pentagon_is_not_realizable() {
        let (d, r, p) = builtin_wright_pentagon();
        let out = quantum_feasibility(&d, &r, &p).unwrap();
        let Feasibility::NotRealizable(Certificate::KernelRank { rank, dim, zero_atoms }) = out
        else {
            panic!("expected kernel certificate, got {out:?}")
        };
        assert_eq!((rank, dim), (3, 3));
        assert_eq!(zero_atoms, vec!["b0", "b1", "b2", "b3", "b4"]);
    }
}
