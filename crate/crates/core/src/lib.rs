#![no_std]

//! Frame functions and density operators on finite-dimensional real Hilbert
//! spaces, in both directions, plus probability states on Greechie diagrams.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem or a terminal lives in the `gleason-cli` companion crate.
//!
//! * [`numerics`] small dense symmetric linear algebra, least squares and a
//!   phase-one simplex feasibility test.
//! * [`density`] density operators, projectors, the Born rule and purity.
//! * [`frame`] frame functions as quadratic forms, reconstruction of the
//!   density operator from a black-box frame function, and inertia
//!   classification.
//! * [`greechie`] Greechie diagrams, two-valued states, convex decomposition
//!   and quantum realizability of block states.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod density;
mod error;
pub mod frame;
pub mod greechie;
pub mod numerics;

pub use error::{Error, Result};

/// Default tolerance for rank, definiteness and trace decisions.
pub const DEFAULT_TOL: f64 = 1e-9;
