//! Dense real linear algebra at desk scale (dimension up to a few dozen).

mod eigen;
mod gram_schmidt;
mod lstsq;
mod matrix;
mod simplex;

pub use eigen::{eigh, rank, EigenDecomposition};
pub use gram_schmidt::orthonormalize;
pub use lstsq::{matrix_rank, solve_least_squares, LeastSquares};
pub use matrix::{dot, norm, SymMatrix};
pub use simplex::{lp_feasible, LpOutcome};
