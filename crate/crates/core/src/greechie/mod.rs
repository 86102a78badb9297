//! Greechie diagrams: atoms grouped into blocks, each block a complete
//! orthogonal context whose probabilities sum to one.
//!
//! Besides validating states this module answers three questions about a
//! state on a diagram:
//! * is it a convex combination of two-valued states ([`convex_decomposition`]),
//! * is it an extreme point of the state polytope ([`is_polytope_vertex`]),
//! * given a vector realization, is there a density operator reproducing it
//!   ([`quantum_feasibility`]).

mod builtin;
mod diagram;
mod realization;
mod two_valued;

pub use builtin::{
    builtin_spin_half_family, builtin_wright_pentagon, spin_half_ignorant_measure,
    spin_half_sharp_measure,
};
pub use diagram::{validate_state, GreechieDiagram, ProbabilityAssignment, StateViolation, Validation};
pub use realization::{
    check_realization, max_block_overlap, quantum_feasibility, Certificate, Feasibility,
    RealizationViolation, VectorRealization,
};
pub use two_valued::{
    convex_decomposition, enumerate_two_valued_states, is_polytope_vertex, Decomposition,
    TwoValuedState,
};
