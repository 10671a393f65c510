//! The generalized locker problem as linear algebra over GF(2).
//!
//! Student `i` toggles every locker `j` with `i | j`. Student sets form the
//! group `(2^{1..n}, Δ)`, locker states the group `(Z_2^n, +)`, and the game
//! induces an isomorphism between them. This crate provides the simulator,
//! the forward map and its inverse, closed forms for special student sets,
//! and a verifier that checks all of them against the simulator.

pub mod bits;
pub mod cli;
pub mod engine;
pub mod error;
pub mod number_theory;
pub mod verify;

pub use bits::{
    min_element, reduce_moves, sym_diff, xor_states, IndexSet, LockerState, MoveSequence,
};
pub use engine::{
    basis_set, closed_all, closed_all_but_one, closed_single, count_open, count_open_prefix,
    forward, forward_basis, forward_divisor_parity, inverse_map, simulate, solve_from_initial,
    torrence_marchers, torrence_open_state, Basis, ProblemSpec,
};
pub use error::{LockerError, Result};
pub use number_theory::{
    divisor_count, factorize, is_perfect_square, sigma_set, signature, squarefree_upto, theta,
    upsilon_predicate, ExponentFilter, Factorization, MultiplesOf, SignatureSet, Upsilon,
};
pub use verify::{CheckReport, Counterexample};
