//! Walks, certificate verification and exact hamiltonicity search.

mod solver;
mod verify;
mod walk;

pub use solver::{
    default_budget, find_hamiltonian_cycle, find_hamiltonian_path, is_hamiltonian_connected, search_cycles, tokens_along,
    SearchError, SearchOptions, UseConstraint, DEFAULT_BUDGET, HAMILTONIAN_CONNECTED_CAP,
};
pub use verify::{
    verify_hamiltonian_cycle, verify_hamiltonian_path, walk_product, walk_vertices, VerificationReport, Violation,
    ViolationReason,
};
pub use walk::{flatten, Token, Walk, WalkExpr};
