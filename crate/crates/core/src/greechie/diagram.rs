use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result, DEFAULT_TOL};

/// Outcome of a check that can report several independent problems.
#[derive(Debug, Clone, PartialEq)]
pub enum Validation<V> {
    Valid,
    Invalid(Vec<V>),
}

impl<V> Validation<V> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn violations(&self) -> &[V] {
        match self {
            Validation::Valid => &[],
            Validation::Invalid(v) => v,
        }
    }

    pub(crate) fn from_list(list: Vec<V>) -> Self {
        if list.is_empty() {
            Validation::Valid
        } else {
            Validation::Invalid(list)
        }
    }
}

/// Atoms and the blocks (contexts) they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct GreechieDiagram {
    atoms: Vec<String>,
    blocks: Vec<Vec<usize>>,
    index: BTreeMap<String, usize>,
}

impl GreechieDiagram {
    /// Every block needs at least two distinct known atoms, and every atom
    /// must sit in some block.
    pub fn new<A, B, S>(atoms: A, blocks: B) -> Result<Self>
    where
        A: IntoIterator<Item = S>,
        B: IntoIterator,
        B::Item: IntoIterator,
        <B::Item as IntoIterator>::Item: AsRef<str>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        let mut covered = alloc::vec![false; atoms.len()];
        let mut out_blocks = Vec::new();
        for (b, block) in blocks.into_iter().enumerate() {
            let mut ids: Vec<usize> = Vec::new();
            for name in block {
                let name = name.as_ref();
                let &i = index.get(name).ok_or_else(|| Error::UnknownAtom(name.into()))?;
                if ids.contains(&i) {
                    return Err(Error::RepeatedAtomInBlock { block: b, atom: name.into() });
                }
                ids.push(i);
                covered[i] = true;
            }
            if ids.len() < 2 {
                return Err(Error::BlockTooSmall { block: b, size: ids.len() });
            }
            out_blocks.push(ids);
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::OrphanAtom(atoms[i].clone()));
        }
        Ok(GreechieDiagram { atoms, blocks: out_blocks, index })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Blocks as indices into [`atoms`](Self::atoms).
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_names(&self, b: usize) -> Vec<&str> {
        self.blocks[b].iter().map(|&i| self.atoms[i].as_str()).collect()
    }

    pub fn atom_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }
}

/// Atom → probability.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProbabilityAssignment {
    values: BTreeMap<String, f64>,
}

impl ProbabilityAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: f64) -> Option<f64> {
        self.values.insert(atom.into(), value)
    }

    pub fn get(&self, atom: &str) -> Option<f64> {
        self.values.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in the diagram's atom order; every atom must be assigned and
    /// every key must be an atom.
    pub fn aligned(&self, d: &GreechieDiagram) -> Result<Vec<f64>> {
        if let Some(k) = self.values.keys().find(|k| d.atom_index(k).is_none()) {
            return Err(Error::UnknownAtom(k.clone()));
        }
        d.atoms()
            .iter()
            .map(|a| self.get(a).ok_or_else(|| Error::MissingAtom(a.clone())))
            .collect()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for ProbabilityAssignment {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        ProbabilityAssignment { values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    OutOfRange { atom: String, value: f64 },
    /// `deficit = 1 − sum`.
    BlockSum { block: usize, sum: f64, deficit: f64 },
}

/// Checks `0 ≤ p ≤ 1` per atom and `Σ p = 1` per block, both to `1e-9`.
pub fn validate_state(
    d: &GreechieDiagram,
    p: &ProbabilityAssignment,
) -> Result<Validation<StateViolation>> {
    let values = p.aligned(d)?;
    let mut violations = Vec::new();
    for (atom, &v) in d.atoms().iter().zip(&values) {
        if !(-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&v) {
            violations.push(StateViolation::OutOfRange { atom: atom.clone(), value: v });
        }
    }
    for (b, block) in d.blocks().iter().enumerate() {
        let sum: f64 = block.iter().map(|&i| values[i]).sum();
        if !((sum - 1.0).abs() <= DEFAULT_TOL) {
            violations.push(StateViolation::BlockSum { block: b, sum, deficit: 1.0 - sum });
        }
    }
    Ok(Validation::from_list(violations))
}
