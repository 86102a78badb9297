use alloc::string::String;
use core::fmt;

use crate::numerics::SymMatrix;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Diagnostics attached to a quadratic form that failed to be a density
/// operator.
#[derive(Debug, Clone, PartialEq)]
pub struct NotQuantum {
    pub form: SymMatrix,
    pub trace: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    EmptyInput,
    Asymmetric { row: usize, col: usize, gap: f64 },
    NonFinite,
    LinearlyDependent { rank: usize, count: usize },
    NotNormalized { norm: f64 },
    ZeroVector,
    BadWeights { sum: f64 },
    NotUnit { norm: f64 },
    NotAProjector { deviation: f64 },
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    BadTrace { trace: f64 },
    NotAFrameFunction { deviation: f64 },
    NotQuantum(alloc::boxed::Box<NotQuantum>),
    NotPositive { negative: usize },
    DimensionTooSmall { dim: usize },
    UnknownAtom(String),
    MissingAtom(String),
    DuplicateAtom(String),
    BlockTooSmall { block: usize, size: usize },
    RepeatedAtomInBlock { block: usize, atom: String },
    OrphanAtom(String),
    DuplicateDirection { first: usize, second: usize },
    InvalidState,
    InvalidRealization,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInput => f.write_str("empty input"),
            Error::Asymmetric { row, col, gap } => write!(
                f,
                "matrix is not symmetric: entries ({row},{col}) and ({col},{row}) differ by {gap:e}"
            ),
            Error::NonFinite => f.write_str("non-finite matrix entry"),
            Error::LinearlyDependent { rank, count } => {
                write!(f, "vectors are linearly dependent: rank {rank} < {count}")
            }
            Error::NotNormalized { norm } => write!(f, "state vector is not normalized: norm {norm}"),
            Error::ZeroVector => f.write_str("zero vector does not span a ray"),
            Error::BadWeights { sum } => {
                write!(f, "mixture weights must be nonnegative and sum to 1 (sum {sum})")
            }
            Error::NotUnit { norm } => write!(f, "argument is not a unit vector: norm {norm}"),
            Error::NotAProjector { deviation } => {
                write!(f, "matrix is not idempotent: max |E^2 - E| = {deviation:e}")
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(f, "not positive semidefinite: minimum eigenvalue {min_eigenvalue:e}")
            }
            Error::BadTrace { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::NotAFrameFunction { deviation } => write!(
                f,
                "oracle is not a quadratic form: probe deviation {deviation:e}"
            ),
            Error::NotQuantum(d) => write!(
                f,
                "reconstructed form is not a density operator (trace {}, minimum eigenvalue {:e})",
                d.trace, d.min_eigenvalue
            ),
            Error::NotPositive { negative } => {
                write!(f, "form has {negative} negative square(s)")
            }
            Error::DimensionTooSmall { dim } => write!(f, "dimension {dim} is too small"),
            Error::UnknownAtom(a) => write!(f, "unknown atom `{a}`"),
            Error::MissingAtom(a) => write!(f, "no value for atom `{a}`"),
            Error::DuplicateAtom(a) => write!(f, "atom `{a}` declared twice"),
            Error::BlockTooSmall { block, size } => {
                write!(f, "block {block} has {size} atom(s), at least 2 required")
            }
            Error::RepeatedAtomInBlock { block, atom } => {
                write!(f, "atom `{atom}` repeated in block {block}")
            }
            Error::OrphanAtom(a) => write!(f, "atom `{a}` belongs to no block"),
            Error::DuplicateDirection { first, second } => {
                write!(f, "directions {first} and {second} coincide modulo pi")
            }
            Error::InvalidState => f.write_str("probability assignment is not a state"),
            Error::InvalidRealization => f.write_str("vector realization is not valid"),
        }
    }
}

impl core::error::Error for Error {}
