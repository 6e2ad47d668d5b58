//! Real representations of associative Hermitian matrices and the small
//! amount of dense linear algebra the crate needs on top of them.
//!
//! An `n×n` matrix over K ∈ {R, C, H} (real dimension `d`) is represented by
//! the real `dn × dn` matrix whose `(i, j)` block is the left-multiplication
//! matrix `L(x_ij)`. `L` is an injective algebra homomorphism with
//! `L(conj x) = L(x)ᵀ`, so Hermitian matrices map to symmetric ones and every
//! eigenvalue appears with multiplicity `d`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::division_ring::{Hypercomplex, Ring};
use crate::error::{Error, Result};
use crate::jordan::matrix::KMatrix;
use crate::scalar::Scalar;

/// Dense real matrix over a [`Scalar`], row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, x| T::max_of(acc, x.abs()))
    }

    /// Reduced row echelon form with partial pivoting. Pivots below
    /// `rel · max(1, max|a_ij|)` count as zero (exactly zero for rationals).
    pub fn rref(&self, rel: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let tol = T::tolerance(rel) * T::max_of(T::one(), self.max_abs());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let (best, best_val) = (row..m.rows)
                .map(|r| (r, m[(r, col)].abs()))
                .fold((row, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_val <= tol {
                for r in row..m.rows {
                    m[(r, col)] = T::zero();
                }
                continue;
            }
            m.swap_rows(row, best);
            let piv = m[(row, col)].clone();
            for j in col..m.cols {
                let v = m[(row, j)].clone() / piv.clone();
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in col..m.cols {
                    let v = m[(r, j)].clone() - f.clone() * m[(row, j)].clone();
                    m[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, rel: f64) -> usize {
        self.rref(rel).1.len()
    }

    /// Basis of the null space, one column per free variable.
    pub fn null_space(&self, rel: f64) -> Self {
        let (r, pivots) = self.rref(rel);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -r[(row, f)].clone();
            }
        }
        basis
    }

    pub fn inverse(&self, rel: f64) -> Result<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref(rel);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Shape("singular matrix".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Orthogonal projector onto the column space of `v` (full column rank).
    pub fn column_projector(v: &Self, rel: f64) -> Result<Self> {
        if v.cols == 0 {
            return Ok(Self::zeros(v.rows, v.rows));
        }
        let vt = v.transpose();
        let gram_inv = vt.mul(v).inverse(rel)?;
        Ok(v.mul(&gram_inv).mul(&vt))
    }

    /// Coefficients `c_1..c_n` of `det(λI − A) = λⁿ + c_1 λⁿ⁻¹ + … + c_n`
    /// by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = Vec::with_capacity(n);
        let mut m = Self::zeros(n, n);
        let mut prev = T::one();
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next[(i, i)].clone() + prev.clone();
                next[(i, i)] = v;
            }
            let am = self.mul(&next);
            let tr = (0..n).fold(T::zero(), |acc, i| acc + am[(i, i)].clone());
            let c = -tr / T::from_ratio(k as i64, 1);
            coeffs.push(c.clone());
            prev = c;
            m = next;
        }
        coeffs
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Dense<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Dense<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Left-multiplication matrix of `x`: column `c` holds the coordinates of
/// `x·e_c`.
pub fn left_mult_matrix<T: Scalar>(x: &Hypercomplex<T>) -> Dense<T> {
    let d = x.ring().dim();
    let mut m = Dense::zeros(d, d);
    for c in 0..d {
        let col = x * &Hypercomplex::unit(x.ring(), c);
        for (r, v) in col.coords().iter().enumerate() {
            m[(r, c)] = v.clone();
        }
    }
    m
}

/// Real representation of a square matrix over an associative ring.
pub fn real_representation<T: Scalar>(m: &KMatrix<T>) -> Result<Dense<T>> {
    let ring = m.ring();
    if !ring.is_associative() {
        return Err(Error::Unsupported(
            "octonionic matrices have no associative real representation".into(),
        ));
    }
    let d = ring.dim();
    let mut out = Dense::zeros(m.rows() * d, m.cols() * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let l = left_mult_matrix(m.get(i, j));
            for a in 0..d {
                for b in 0..d {
                    out[(i * d + a, j * d + b)] = l[(a, b)].clone();
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`real_representation`] for a matrix commuting with the
/// right K-action: entry `(i, j)` is read off the first column of its block.
pub fn from_real_representation<T: Scalar>(ring: Ring, r: &Dense<T>) -> KMatrix<T> {
    let d = ring.dim();
    let (rows, cols) = (r.rows / d, r.cols / d);
    KMatrix::from_fn(ring, rows, cols, |i, j| {
        let coords = (0..d).map(|a| r[(i * d + a, j * d)].clone()).collect();
        Hypercomplex::new(ring, coords).expect("coordinate count matches ring")
    })
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a real symmetric
/// matrix.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |i, k| eig.eigenvectors[(i, order[k])]);
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn left_mult_is_homomorphism_on_quaternions() {
        let x = Hypercomplex::new(Ring::Quaternion, vec![1.0, 2.0, -1.0, 0.5]).unwrap();
        let y = Hypercomplex::new(Ring::Quaternion, vec![0.0, -1.0, 3.0, 2.0]).unwrap();
        let lhs = left_mult_matrix(&(&x * &y));
        let rhs = left_mult_matrix(&x).mul(&left_mult_matrix(&y));
        assert_eq!(lhs, rhs);
        assert_eq!(left_mult_matrix(&x.conj()), left_mult_matrix(&x).transpose());
    }

    #[test]
    fn null_space_and_inverse_exact() {
        let r = |a: i64| Rational::from_ratio(a, 1);
        let m = Dense {
            rows: 2,
            cols: 3,
            data: vec![r(1), r(2), r(3), r(2), r(4), r(6)],
        };
        let ns = m.null_space(0.0);
        assert_eq!(ns.cols, 2);
        let zero = m.mul(&ns);
        assert!(zero.data.iter().all(|x| *x == r(0)));
        let a = Dense { rows: 2, cols: 2, data: vec![r(2), r(1), r(1), r(1)] };
        assert_eq!(a.mul(&a.inverse(0.0).unwrap()), Dense::identity(2));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let r = |a: i64| Rational::from_ratio(a, 1);
        let a = Dense { rows: 2, cols: 2, data: vec![r(2), r(0), r(0), r(3)] };
        // (λ-2)(λ-3) = λ² - 5λ + 6
        assert_eq!(a.char_poly(), vec![r(-5), r(6)]);
    }

    #[test]
    fn real_rep_round_trip() {
        let ring = Ring::Complex;
        let m = KMatrix::from_fn(ring, 2, 2, |i, j| {
            Hypercomplex::new(ring, vec![(i + 2 * j) as f64, i as f64 - j as f64]).unwrap()
        });
        let r = real_representation(&m).unwrap();
        assert_eq!(from_real_representation(ring, &r), m);
    }
}
