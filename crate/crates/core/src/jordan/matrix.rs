use std::fmt;

use crate::division_ring::{Hypercomplex, Ring};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense rectangular matrix over one of the division rings, row-major.
#[derive(Clone, PartialEq)]
pub struct KMatrix<T> {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Hypercomplex<T>>,
}

impl<T: fmt::Debug> fmt::Debug for KMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KMatrix<{}> {}x{} [", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> KMatrix<T> {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Hypercomplex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        Ok(Self { ring, rows, cols, data })
    }

    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Hypercomplex<T>,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.ring(), ring, "from_fn produced an entry over the wrong ring");
                data.push(x);
            }
        }
        Self { ring, rows, cols, data }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Self::from_fn(ring, rows, cols, |_, _| Hypercomplex::zero(ring))
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| {
            if i == j {
                Hypercomplex::one(ring)
            } else {
                Hypercomplex::zero(ring)
            }
        })
    }

    /// Real diagonal matrix.
    pub fn diagonal(ring: Ring, diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(ring, n, n, |i, j| {
            if i == j {
                Hypercomplex::real(ring, diag[i].clone())
            } else {
                Hypercomplex::zero(ring)
            }
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Hypercomplex<T> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Hypercomplex<T>) {
        assert_eq!(x.ring(), self.ring);
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Hypercomplex<T>] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Hypercomplex<T>, &Hypercomplex<T>) -> Hypercomplex<T>,
    ) -> Self {
        Self {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(k)).collect(),
        }
    }

    /// Matrix product with ring multiplication on the entries. Over O the
    /// product is not associative.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring;
        Ok(Self::from_fn(ring, self.rows, other.cols, |i, j| {
            let mut acc = Hypercomplex::zero(ring);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        }))
    }

    /// Kronecker product; only meaningful over commutative rings.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if !matches!(self.ring, Ring::Real | Ring::Complex) {
            return Err(Error::Unsupported(format!(
                "tensor products over {} are not defined here",
                self.ring
            )));
        }
        let (r2, c2) = (other.rows, other.cols);
        Ok(Self::from_fn(self.ring, self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        }))
    }

    /// Places `blocks` on the diagonal.
    pub fn block_diagonal(ring: Ring, blocks: &[&KMatrix<T>]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ring, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.ring != ring {
                return Err(Error::RingMismatch(ring, b.ring));
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Sum of squared entry norms.
    pub fn frobenius2(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, x| acc + x.norm2())
    }

    /// Hermitian up to `T::tolerance(rel)` relative to the Frobenius norm.
    pub fn is_hermitian(&self, rel: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let tol = T::tolerance(rel);
        let scale = T::max_of(T::one(), self.frobenius2());
        let bound = tol.clone() * tol * scale;
        let mut defect = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                defect = defect + (self.get(i, j) - &self.get(j, i).conj()).norm2();
            }
        }
        defect <= bound
    }

    /// Replaces the lower triangle by the conjugated upper triangle and drops
    /// imaginary parts on the diagonal.
    pub fn hermitian_part_upper(&self) -> Self {
        Self::from_fn(self.ring, self.rows, self.cols, |i, j| {
            if i == j {
                Hypercomplex::real(self.ring, self.get(i, i).re().clone())
            } else if i < j {
                self.get(i, j).clone()
            } else {
                self.get(j, i).conj()
            }
        })
    }

    pub fn cast<U: Scalar>(&self) -> KMatrix<U> {
        KMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.cast()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Hypercomplex<f64> {
        Hypercomplex::new(Ring::Complex, vec![re, im]).unwrap()
    }

    #[test]
    fn product_and_adjoint() {
        let a = KMatrix::new(Ring::Complex, 1, 2, vec![c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        let aa = a.mul(&a.adjoint()).unwrap();
        assert_eq!(aa, KMatrix::diagonal(Ring::Complex, &[2.0]));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn kron_shapes() {
        let i2 = KMatrix::<f64>::identity(Ring::Complex, 2);
        let d = KMatrix::diagonal(Ring::Complex, &[1.0, 0.0, 0.0]);
        let k = i2.kron(&d).unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(3, 3), &Hypercomplex::one(Ring::Complex));
        assert!(KMatrix::<f64>::identity(Ring::Quaternion, 2)
            .kron(&KMatrix::identity(Ring::Quaternion, 2))
            .is_err());
    }

    #[test]
    fn hermitian_detection() {
        let h = KMatrix::new(
            Ring::Complex,
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(3.0, 0.0)],
        )
        .unwrap();
        assert!(h.is_hermitian(1e-12));
        let mut bad = h.clone();
        bad.set(1, 0, c(0.0, 2.0));
        assert!(!bad.is_hermitian(1e-12));
        assert!(bad.hermitian_part_upper().is_hermitian(0.0));
    }
}
