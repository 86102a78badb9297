use alloc::vec;
use alloc::vec::Vec;

use super::diagram::{validate_state, GreechieDiagram, ProbabilityAssignment};
use crate::numerics::{lp_feasible, matrix_rank, LpOutcome};
use crate::{Error, Result, DEFAULT_TOL};

/// A {0,1}-valued state: exactly one true atom per block.
///
/// `truth[i]` belongs to `d.atoms()[i]` of the diagram it was enumerated on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState {
    truth: Vec<bool>,
}

impl TwoValuedState {
    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    pub fn true_atoms<'d>(&self, d: &'d GreechieDiagram) -> Vec<&'d str> {
        d.atoms()
            .iter()
            .zip(&self.truth)
            .filter(|(_, &t)| t)
            .map(|(a, _)| a.as_str())
            .collect()
    }

    pub fn to_assignment(&self, d: &GreechieDiagram) -> ProbabilityAssignment {
        d.atoms()
            .iter()
            .zip(&self.truth)
            .map(|(a, &t)| (a.clone(), if t { 1.0 } else { 0.0 }))
            .collect()
    }
}

struct Search<'a> {
    blocks: &'a [Vec<usize>],
    incidence: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    out: Vec<TwoValuedState>,
}

impl Search<'_> {
    /// A block is dead once it has two true atoms or only false ones.
    fn consistent_around(&self, atoms: &[usize]) -> bool {
        atoms.iter().flat_map(|&a| &self.incidence[a]).all(|&b| {
            let block = &self.blocks[b];
            let ones = block.iter().filter(|&&i| self.assign[i] == Some(true)).count();
            let open = block.iter().any(|&i| self.assign[i].is_none());
            ones <= 1 && (ones == 1 || open)
        })
    }

    fn run(&mut self, k: usize) {
        if k == self.blocks.len() {
            let truth = self.assign.iter().map(|v| v.unwrap_or(false)).collect();
            self.out.push(TwoValuedState { truth });
            return;
        }
        let block = &self.blocks[k];
        let has_one = block.iter().any(|&i| self.assign[i] == Some(true));
        let open: Vec<usize> =
            block.iter().copied().filter(|&i| self.assign[i].is_none()).collect();
        if has_one {
            open.iter().for_each(|&i| self.assign[i] = Some(false));
            if self.consistent_around(&open) {
                self.run(k + 1);
            }
            open.iter().for_each(|&i| self.assign[i] = None);
            return;
        }
        for &chosen in &open {
            for &i in &open {
                self.assign[i] = Some(i == chosen);
            }
            if self.consistent_around(&open) {
                self.run(k + 1);
            }
            open.iter().for_each(|&i| self.assign[i] = None);
        }
    }
}

/// All two-valued states, sorted lexicographically by truth vector in atom
/// order (false before true).
///
/// Backtracks block by block, choosing the true atom of each block and
/// propagating the forced zeros to every block sharing an atom.
pub fn enumerate_two_valued_states(d: &GreechieDiagram) -> Vec<TwoValuedState> {
    let mut incidence = vec![Vec::new(); d.num_atoms()];
    for (b, block) in d.blocks().iter().enumerate() {
        for &a in block {
            incidence[a].push(b);
        }
    }
    let mut search =
        Search { blocks: d.blocks(), incidence, assign: vec![None; d.num_atoms()], out: Vec::new() };
    search.run(0);
    let mut out = search.out;
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    /// Positive weights summing to one.
    Decomposable(Vec<(f64, TwoValuedState)>),
    NotDecomposable,
}

fn require_state(d: &GreechieDiagram, p: &ProbabilityAssignment) -> Result<Vec<f64>> {
    if !validate_state(d, p)?.is_valid() {
        return Err(Error::InvalidState);
    }
    p.aligned(d)
}

/// Writes `p` as a convex combination of two-valued states when possible.
///
/// Solves the feasibility problem `w ≥ 0, Σ w = 1, Σ_s w_s s(a) = p(a)` over
/// the enumerated two-valued states.
pub fn convex_decomposition(
    d: &GreechieDiagram,
    p: &ProbabilityAssignment,
) -> Result<Decomposition> {
    let values = require_state(d, p)?;
    let states = enumerate_two_valued_states(d);
    if states.is_empty() {
        return Ok(Decomposition::NotDecomposable);
    }
    let mut eqs: Vec<(Vec<f64>, f64)> = (0..d.num_atoms())
        .map(|a| {
            let row = states.iter().map(|s| if s.truth[a] { 1.0 } else { 0.0 }).collect();
            (row, values[a])
        })
        .collect();
    eqs.push((vec![1.0; states.len()], 1.0));

    match lp_feasible(&eqs, states.len())? {
        LpOutcome::Infeasible => Ok(Decomposition::NotDecomposable),
        LpOutcome::Feasible(w) => {
            let total: f64 = w.iter().sum();
            let parts = w
                .into_iter()
                .zip(states)
                .filter(|(wi, _)| *wi > 1e-12)
                .map(|(wi, s)| (wi / total, s))
                .collect();
            Ok(Decomposition::Decomposable(parts))
        }
    }
}

/// Whether `p` is an extreme point of `{q ≥ 0 : every block sums to 1}`.
///
/// That holds exactly when the block equalities together with the tight
/// constraints `q(a) = 0` have full rank.
pub fn is_polytope_vertex(d: &GreechieDiagram, p: &ProbabilityAssignment) -> Result<bool> {
    let values = require_state(d, p)?;
    let n = d.num_atoms();
    let mut rows: Vec<Vec<f64>> = d
        .blocks()
        .iter()
        .map(|block| {
            let mut r = vec![0.0; n];
            block.iter().for_each(|&i| r[i] = 1.0);
            r
        })
        .collect();
    for (a, v) in values.iter().enumerate() {
        if v.abs() <= DEFAULT_TOL {
            let mut r = vec![0.0; n];
            r[a] = 1.0;
            rows.push(r);
        }
    }
    Ok(matrix_rank(&rows, DEFAULT_TOL)? == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greechie::{
        builtin_spin_half_family, builtin_wright_pentagon, spin_half_ignorant_measure,
        spin_half_sharp_measure,
    };

    fn fig1(n: usize) -> GreechieDiagram {
        let angles: Vec<f64> = (0..n).map(|i| i as f64 * 0.3).collect();
        builtin_spin_half_family(n, &angles).unwrap().0
    }

    #[test]
    fn spin_half_counts() {
        assert_eq!(enumerate_two_valued_states(&fig1(3)).len(), 8);
        assert_eq!(enumerate_two_valued_states(&fig1(1)).len(), 2);
    }

    #[test]
    fn single_triple_block() {
        let d = GreechieDiagram::new(["a", "b", "c"], vec![vec!["a", "b", "c"]]).unwrap();
        let states = enumerate_two_valued_states(&d);
        let truths: Vec<&[bool]> = states.iter().map(|s| s.truth()).collect();
        assert_eq!(
            truths,
            vec![&[false, false, true][..], &[false, true, false], &[true, false, false]]
        );
    }

    #[test]
    fn pentagon_has_eleven() {
        let (d, _, _) = builtin_wright_pentagon();
        let states = enumerate_two_valued_states(&d);
        assert_eq!(states.len(), 11);
        // first in lexicographic order: a1, a3, b4 true
        assert_eq!(states[0].true_atoms(&d), vec!["a1", "a3", "b4"]);
    }

    #[test]
    fn sharp_measure_decomposes_trivially() {
        let d = fig1(2);
        let Decomposition::Decomposable(parts) =
            convex_decomposition(&d, &spin_half_sharp_measure(2)).unwrap()
        else {
            panic!("expected decomposable")
        };
        assert_eq!(parts.len(), 1);
        assert!((parts[0].0 - 1.0).abs() < 1e-12);
        assert_eq!(parts[0].1.true_atoms(&d), vec!["x-1", "x-2"]);
    }

    #[test]
    fn ignorant_measure_decomposes() {
        let d = fig1(2);
        let p = spin_half_ignorant_measure(2);
        let Decomposition::Decomposable(parts) = convex_decomposition(&d, &p).unwrap() else {
            panic!("expected decomposable")
        };
        for (a, atom) in d.atoms().iter().enumerate() {
            let got: f64 = parts.iter().filter(|(_, s)| s.truth()[a]).map(|(w, _)| w).sum();
            assert!((got - p.get(atom).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn pentagon_measure_is_not_decomposable() {
        let (d, _, p) = builtin_wright_pentagon();
        assert_eq!(convex_decomposition(&d, &p).unwrap(), Decomposition::NotDecomposable);
    }

    #[test]
    fn extremality() {
        let (d, _, p) = builtin_wright_pentagon();
        assert!(is_polytope_vertex(&d, &p).unwrap());
        for s in enumerate_two_valued_states(&d) {
            assert!(is_polytope_vertex(&d, &s.to_assignment(&d)).unwrap());
        }
        for n in 1..4 {
            assert!(!is_polytope_vertex(&fig1(n), &spin_half_ignorant_measure(n)).unwrap());
        }
    }

    #[test]
    fn invalid_state_is_rejected() {
        let d = fig1(1);
        let p: ProbabilityAssignment = [("x-1", 0.2), ("x+1", 0.2)].into_iter().collect();
        assert_eq!(convex_decomposition(&d, &p), Err(Error::InvalidState));
        assert_eq!(is_polytope_vertex(&d, &p), Err(Error::InvalidState));
    }
}
