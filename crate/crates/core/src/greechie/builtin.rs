use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::diagram::{GreechieDiagram, ProbabilityAssignment};
use super::realization::VectorRealization;
use crate::{Error, Result};

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Wright's pentagon: atoms `a0 b0 a1 b1 … a4 b4`, blocks `{aᵢ, bᵢ, aᵢ₊₁}`,
/// its embedding in `R³`, and the state `aᵢ ↦ ½`, `bᵢ ↦ 0`.
pub fn builtin_wright_pentagon() -> (GreechieDiagram, VectorRealization, ProbabilityAssignment) {
    let r5 = sqrt(5.0);
    let spans: [(&str, [f64; 3]); 10] = [
        ("a0", [sqrt(r5), sqrt(2.0 + r5), sqrt(3.0 + r5)]),
        ("b0", [sqrt(r5), -sqrt(2.0 + r5), sqrt(3.0 - r5)]),
        ("a1", [-sqrt(r5), -sqrt(-2.0 + r5), sqrt(2.0)]),
        ("b1", [0.0, sqrt(2.0), sqrt(-2.0 + r5)]),
        ("a2", [sqrt(r5), -sqrt(-2.0 + r5), sqrt(2.0)]),
        ("b2", [-sqrt(r5), -sqrt(2.0 + r5), sqrt(3.0 - r5)]),
        ("a3", [-sqrt(r5), sqrt(2.0 + r5), sqrt(3.0 + r5)]),
        ("b3", [sqrt(5.0 + r5), sqrt(3.0 - r5), 2.0 * sqrt(-2.0 + r5)]),
        ("a4", [0.0, -sqrt(-1.0 + r5), 1.0]),
        ("b4", [-sqrt(5.0 + r5), sqrt(3.0 - r5), 2.0 * sqrt(-2.0 + r5)]),
    ];
    let atoms: Vec<&str> = spans.iter().map(|(id, _)| *id).collect();
    let blocks: Vec<Vec<String>> = (0..5)
        .map(|i| vec![format!("a{i}"), format!("b{i}"), format!("a{}", (i + 1) % 5)])
        .collect();
    let diagram = GreechieDiagram::new(atoms.iter().copied(), blocks).expect("pentagon diagram");
    let realization =
        VectorRealization::from_spans(3, spans.iter().map(|(id, v)| (*id, v.to_vec())))
            .expect("pentagon vectors");
    let measure = atoms
        .iter()
        .map(|id| (*id, if id.starts_with('a') { 0.5 } else { 0.0 }))
        .collect();
    (diagram, realization, measure)
}

/// `n` disjoint two-atom blocks `{x-i, x+i}` realized in `R²` by the rotated
/// bases `x-i = (cos θᵢ, sin θᵢ)`, `x+i = (−sin θᵢ, cos θᵢ)`.
pub fn builtin_spin_half_family(
    n: usize,
    directions: &[f64],
) -> Result<(GreechieDiagram, VectorRealization)> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if directions.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: directions.len() });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if libm::sin(directions[i] - directions[j]).abs() <= 1e-12 {
                return Err(Error::DuplicateDirection { first: i, second: j });
            }
        }
    }
    let mut atoms = Vec::with_capacity(2 * n);
    let mut blocks = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(2 * n);
    for (i, &t) in directions.iter().enumerate() {
        let (minus, plus) = (format!("x-{}", i + 1), format!("x+{}", i + 1));
        let (s, c) = (libm::sin(t), libm::cos(t));
        vectors.push((minus.clone(), vec![c, s]));
        vectors.push((plus.clone(), vec![-s, c]));
        blocks.push(vec![minus.clone(), plus.clone()]);
        atoms.push(minus);
        atoms.push(plus);
    }
    let diagram = GreechieDiagram::new(atoms, blocks)?;
    let realization = VectorRealization::from_vectors(2, vectors)?;
    Ok((diagram, realization))
}

/// `x-i ↦ 1`, `x+i ↦ 0`: classical, with no quantum realization once two
/// directions differ.
pub fn spin_half_sharp_measure(n: usize) -> ProbabilityAssignment {
    (1..=n).flat_map(|i| [(format!("x-{i}"), 1.0), (format!("x+{i}"), 0.0)]).collect()
}

/// Every atom at ½: the maximally mixed state.
pub fn spin_half_ignorant_measure(n: usize) -> ProbabilityAssignment {
    (1..=n).flat_map(|i| [(format!("x-{i}"), 0.5), (format!("x+{i}"), 0.5)]).collect()
}
