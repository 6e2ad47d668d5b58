//! Hermitian matrix Jordan algebras `H_n(K)` and their direct sums.

pub mod element;
pub mod linalg;
pub mod matrix;
pub mod positivity;
pub mod subalgebra;

pub use element::{AlgebraDescriptor, Factor, JordanElement};
pub use matrix::KMatrix;
pub use positivity::is_positive;
pub use subalgebra::{generated_subalgebra, Subalgebra};
