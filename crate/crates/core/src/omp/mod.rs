//! Finite orthomodular posets, their states, and transition probabilities
//! computed directly from the state space by linear programming.

mod poset;
pub mod simplex;
mod states;
mod sublogic;

pub use poset::{FiniteOMP, ValidationReport, Violation};
pub use states::{
    check_morphism, contains_state, is_state, is_strong, transition_probability_lp, MorphismReport,
    StateSpace, StrongReport,
};
pub use sublogic::{matrix_sublogic, vector_state, MatrixSublogic};
