//! Membership in the order cone `A₊ = {x² | x ∈ A}`.
//!
//! Associative factors are tested through their real representation:
//! eigenvalues in floating mode, the sign pattern of the characteristic
//! polynomial in exact mode. Octonionic factors use the characteristic
//! polynomial built from the trace, the quadratic trace form and the
//! determinant. All characteristic polynomials involved are real-rooted, so
//! "every root ≥ −t" is equivalent to alternating coefficient signs after the
//! shift `λ = μ − t`.

use crate::division_ring::Ring;
use crate::jordan::element::JordanElement;
use crate::jordan::linalg::{real_representation, symmetric_eigen};
use crate::jordan::matrix::KMatrix;
use crate::scalar::Scalar;

/// Negative eigenvalues down to `−EPS_POS · max(1, ‖x‖)` are accepted.
pub const EPS_POS: f64 = 1e-9;

pub fn is_positive<T: Scalar>(x: &JordanElement<T>) -> bool {
    x.blocks().iter().all(block_is_positive)
}

fn block_is_positive<T: Scalar>(b: &KMatrix<T>) -> bool {
    let scale = b.frobenius2().to_f64().sqrt().max(1.0);
    if b.ring() == Ring::Octonion {
        let shift = T::tolerance(EPS_POS * scale);
        return roots_at_least(&octonion_char_poly(b), &shift);
    }
    let rep = real_representation(b).expect("associative ring");
    if T::EXACT {
        roots_at_least(&rep.char_poly(), &T::zero())
    } else {
        let (values, _) = symmetric_eigen(&rep.to_nalgebra());
        values.first().is_none_or(|&v| v >= -EPS_POS * scale)
    }
}

/// Trace, quadratic trace form and determinant of a Hermitian matrix over O
/// with `n ≤ 3`; the characteristic polynomial is `λ³ − t λ² + s λ − d`.
///
/// For `X = [[a, z, ȳ], [z̄, b, x], [y, x̄, c]]` the determinant is
/// `abc + 2 Re((zx)y) − a|x|² − b|y|² − c|z|²`.
pub fn cubic_invariants<T: Scalar>(m: &KMatrix<T>) -> (T, T, T) {
    assert!(m.is_square() && m.rows() == 3);
    let a = m.get(0, 0).re().clone();
    let b = m.get(1, 1).re().clone();
    let c = m.get(2, 2).re().clone();
    let z = m.get(0, 1);
    let x = m.get(1, 2);
    let y = m.get(2, 0);
    let (nx, ny, nz) = (x.norm2(), y.norm2(), z.norm2());
    let trace = a.clone() + b.clone() + c.clone();
    let quad = a.clone() * b.clone() + b.clone() * c.clone() + c.clone() * a.clone()
        - nx.clone()
        - ny.clone()
        - nz.clone();
    let cyc = (&(z * x) * y).re().clone();
    let det = a.clone() * b.clone() * c.clone() + T::two() * cyc - a * nx - b * ny - c * nz;
    (trace, quad, det)
}

/// Monic characteristic polynomial coefficients `c_1..c_n` for an
/// octonionic block.
fn octonion_char_poly<T: Scalar>(m: &KMatrix<T>) -> Vec<T> {
    match m.rows() {
        1 => vec![-m.get(0, 0).re().clone()],
        2 => {
            let a = m.get(0, 0).re().clone();
            let c = m.get(1, 1).re().clone();
            let z2 = m.get(0, 1).norm2();
            vec![-(a.clone() + c.clone()), a * c - z2]
        }
        3 => {
            let (t, s, d) = cubic_invariants(m);
            vec![-t, s, -d]
        }
        _ => unreachable!("octonionic factors have n <= 3"),
    }
}

/// For a real-rooted monic polynomial with coefficients `c_1..c_n`, checks
/// that every root is `≥ −t`.
fn roots_at_least<T: Scalar>(coeffs: &[T], t: &T) -> bool {
    // Taylor shift: coefficients of p(μ − t), highest degree first.
    let mut a: Vec<T> = std::iter::once(T::one()).chain(coeffs.iter().cloned()).collect();
    let n = a.len();
    let minus_t = -t.clone();
    for i in 0..n {
        for j in 1..n - i {
            let v = a[j].clone() + minus_t.clone() * a[j - 1].clone();
            a[j] = v;
        }
    }
    // Roots μ_i ≥ 0 iff the coefficients alternate weakly in sign.
    a.iter().enumerate().all(|(k, c)| {
        if k % 2 == 0 {
            *c >= T::zero()
        } else {
            *c <= T::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn shifted_root_test() {
        let r = |a: i64| Rational::from_ratio(a, 1);
        // (λ - 1)(λ - 2) = λ² - 3λ + 2
        assert!(roots_at_least(&[r(-3), r(2)], &r(0)));
        // (λ + 1)(λ - 2) = λ² - λ - 2
        assert!(!roots_at_least(&[r(-1), r(-2)], &r(0)));
        assert!(roots_at_least(&[r(-1), r(-2)], &r(1)));
    }

    #[test]
    fn minus_identity_is_not_positive() {
        for ring in Ring::ALL {
            let n = if ring == Ring::Octonion { 3 } else { 2 };
            let id = JordanElement::<f64>::from_matrix(KMatrix::identity(ring, n)).unwrap();
            assert!(is_positive(&id));
            assert!(!is_positive(&id.neg()));
            let idq = id.cast::<Rational>();
            assert!(is_positive(&idq));
            assert!(!is_positive(&idq.neg()));
        }
    }
}
