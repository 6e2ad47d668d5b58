//! Tolerance policy shared by all modules. Every threshold is relative and
//! collapses to exact zero for exact scalars.

use crate::scalar::Scalar;

/// Idempotence, order, orthogonality and compatibility checks.
pub const EPS_PROJ: f64 = 1e-8;
/// Residual of `{p,q,p} − s·p` relative to `‖p‖`.
pub const EPS_TP: f64 = 1e-8;
/// Spread of the state-polytope optimum in floating mode.
pub const EPS_LP: f64 = 1e-9;
/// Relative threshold for rank detection in subalgebra closure.
pub const EPS_RANK: f64 = 1e-9;
/// Residual above which the symmetry construction is reported as absent.
pub const EPS_SYMMETRY: f64 = 1e-7;
/// Spread of compression eigenvalues accepted by the spectral oracle.
pub const EPS_ORACLE: f64 = 1e-8;

/// `residual2 ≤ rel² · max(1, scale2)`, both arguments squared norms.
pub fn negligible<T: Scalar>(residual2: &T, scale2: &T, rel: f64) -> bool {
    let tol = T::tolerance(rel);
    let scale = T::max_of(T::one(), scale2.clone());
    *residual2 <= tol.clone() * tol * scale
}

/// Absolute comparison `|a − b| ≤ rel · max(1, |b|)`.
pub fn close<T: Scalar>(a: &T, b: &T, rel: f64) -> bool {
    let d = (a.clone() - b.clone()).abs();
    d <= T::tolerance(rel) * T::max_of(T::one(), b.abs())
}
