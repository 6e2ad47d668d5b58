//! Reference computations written independently of the library internals:
//! hand-coded real block representations for C and H, nalgebra complex
//! Hermitian eigensolves, and octonions as pairs of nalgebra quaternions.

#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::{DMatrix, Quaternion};
use num_complex::Complex64;
use qlogic::{Hypercomplex, KMatrix, Projection, Ring};

pub fn fixture(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).expect("fixture is JSON")
}

/// Left multiplication by `x` on its own coordinate space.
fn left_block(x: &Hypercomplex<f64>) -> DMatrix<f64> {
    let c = x.coords();
    match x.ring() {
        Ring::Real => DMatrix::from_element(1, 1, c[0]),
        Ring::Complex => DMatrix::from_row_slice(2, 2, &[c[0], -c[1], c[1], c[0]]),
        Ring::Quaternion => {
            let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
            DMatrix::from_row_slice(4, 4, &[a, -b, -cc, -d, b, a, -d, cc, cc, d, a, -b, d, -cc, b, a])
        }
        Ring::Octonion => panic!("no associative representation"),
    }
}

/// Real matrix of `m` acting on `K^n` by left multiplication, for R, C, H.
pub fn real_matrix(m: &KMatrix<f64>) -> DMatrix<f64> {
    let d = m.ring().dim();
    let mut out = DMatrix::zeros(m.rows() * d, m.cols() * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.view_mut((i * d, j * d), (d, d)).copy_from(&left_block(m.get(i, j)));
        }
    }
    out
}

pub fn real_of(p: &Projection<f64>) -> DMatrix<f64> {
    real_matrix(p.element().matrix())
}

pub fn complex_matrix(m: &KMatrix<f64>) -> DMatrix<Complex64> {
    assert!(matches!(m.ring(), Ring::Real | Ring::Complex));
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let c = m.get(i, j).coords();
        Complex64::new(c[0], *c.get(1).unwrap_or(&0.0))
    })
}

/// Eigenvalues of the compression of `q` to `range p` for complex `p, q`,
/// straight from nalgebra's Hermitian eigensolver.
pub fn complex_compression(p: &Projection<f64>, q: &Projection<f64>) -> Vec<f64> {
    let pm = complex_matrix(p.element().matrix());
    let qm = complex_matrix(q.element().matrix());
    let eig = pm.clone().symmetric_eigen();
    let keep: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    let v = DMatrix::from_fn(pm.nrows(), keep.len(), |i, k| eig.eigenvectors[(i, keep[k])]);
    let c = v.adjoint() * qm * &v;
    let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
    let mut out: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    out.sort_by(f64::total_cmp);
    out
}

fn quat(c: &[f64]) -> Quaternion<f64> {
    Quaternion::new(c[0], c[1], c[2], c[3])
}

fn coords(q: &Quaternion<f64>) -> [f64; 4] {
    [q.w, q.i, q.j, q.k]
}

/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)` on pairs of nalgebra quaternions.
pub fn octonion_product(x: &[f64], y: &[f64]) -> Vec<f64> {
    let (a, b) = (quat(&x[..4]), quat(&x[4..]));
    let (c, d) = (quat(&y[..4]), quat(&y[4..]));
    let lo = a * c - d.conjugate() * b;
    let hi = d * a + b * c.conjugate();
    coords(&lo).into_iter().chain(coords(&hi)).collect()
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn dist2(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// One PASS/FAIL line per criterion, in a fixed format.
pub fn report(id: u32, title: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {id:>2} [{}] {title}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}
