//! Transition probabilities in quantum logics.
//!
//! The crate computes `P(q|p)` on two carriers: projection lattices of
//! finite-dimensional Jordan algebras `H_n(K)` over R, C, H and O, and
//! abstract finite orthomodular posets with an explicit state space. On the
//! Jordan side the value exists iff `{p,q,p} = s·p`; an independent spectral
//! oracle (compressions of `q` to the range of `p`) and a state-polytope LP
//! cross-check it.
//!
//! All algebra is generic over [`Scalar`]; the aliases below fix the two
//! modes used throughout: `f64` and exact [`Rational`].

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod cloning;
pub mod construct;
pub mod division_ring;
pub mod error;
pub mod json;
pub mod logic;
pub mod jordan;
pub mod omp;
pub mod scalar;
pub mod tol;
pub mod transition;

pub use division_ring::{Hypercomplex, Ring};
pub use error::{Error, Result};
pub use jordan::{AlgebraDescriptor, Factor, JordanElement, KMatrix};
pub use logic::Projection;
pub use scalar::{Rational, Scalar};

pub type Hypercomplex64 = Hypercomplex<f64>;
pub type HypercomplexQ = Hypercomplex<Rational>;
pub type Element32 = JordanElement<f32>;
pub type Element64 = JordanElement<f64>;
pub type ElementQ = JordanElement<Rational>;
pub type Projection32 = Projection<f32>;
pub type Projection64 = Projection<f64>;
pub type ProjectionQ = Projection<Rational>;
