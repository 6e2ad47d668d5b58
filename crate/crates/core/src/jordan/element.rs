use std::fmt;

use crate::division_ring::{Hypercomplex, Ring};
use crate::error::{Error, Result};
use crate::jordan::matrix::KMatrix;
use crate::scalar::Scalar;

/// Relative tolerance used when validating that an input matrix is Hermitian.
const HERMITIAN_TOL: f64 = 1e-10;

/// One simple summand `H_n(K)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub ring: Ring,
    pub n: usize,
}

impl Factor {
    pub fn new(ring: Ring, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("factor dimension must be positive".into()));
        }
        if ring == Ring::Octonion && n > 3 {
            return Err(Error::Unsupported(format!(
                "H_{n}(O) is not a Jordan algebra; octonionic factors need n <= 3"
            )));
        }
        Ok(Self { ring, n })
    }

    /// Real dimension `n + d·n(n-1)/2`.
    pub fn dim(&self) -> usize {
        self.n + self.ring.dim() * self.n * (self.n - 1) / 2
    }
}

/// A direct sum `⊕ H_{n_i}(K_i)`, stored as a list of factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    factors: Vec<Factor>,
}

impl AlgebraDescriptor {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("an algebra needs at least one factor".into()));
        }
        for f in &factors {
            Factor::new(f.ring, f.n)?;
        }
        Ok(Self { factors })
    }

    pub fn single(ring: Ring, n: usize) -> Result<Self> {
        Self::new(vec![Factor::new(ring, n)?])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).sum()
    }

    pub fn is_associative(&self) -> bool {
        self.factors.iter().all(|f| f.ring.is_associative())
    }

    /// Canonical real basis: per factor the diagonal units `E_ii`, then for
    /// each `i < j` and each ring unit `e_t` the element
    /// `e_t E_ij + conj(e_t) E_ji`. The basis is orthogonal for the trace
    /// form, with squared norms 1 (diagonal) and 2 (off-diagonal).
    pub fn canonical_basis<T: Scalar>(&self) -> Vec<JordanElement<T>> {
        let mut out = Vec::with_capacity(self.dim());
        for (b, f) in self.factors.iter().enumerate() {
            for idx in 0..f.dim() {
                let mut blocks: Vec<KMatrix<T>> = self
                    .factors
                    .iter()
                    .map(|g| KMatrix::zeros(g.ring, g.n, g.n))
                    .collect();
                blocks[b] = factor_basis_element(*f, idx);
                out.push(JordanElement { blocks });
            }
        }
        out
    }
}

fn factor_basis_element<T: Scalar>(f: Factor, idx: usize) -> KMatrix<T> {
    let mut m = KMatrix::zeros(f.ring, f.n, f.n);
    if idx < f.n {
        m.set(idx, idx, Hypercomplex::one(f.ring));
        return m;
    }
    let d = f.ring.dim();
    let k = idx - f.n;
    let (pair, t) = (k / d, k % d);
    let (i, j) = upper_pair(f.n, pair);
    let e = Hypercomplex::unit(f.ring, t);
    m.set(j, i, e.conj());
    m.set(i, j, e);
    m
}

/// The `pair`-th strictly upper index pair in row-major order.
fn upper_pair(n: usize, pair: usize) -> (usize, usize) {
    let mut k = pair;
    for i in 0..n {
        let len = n - i - 1;
        if k < len {
            return (i, i + 1 + k);
        }
        k -= len;
    }
    unreachable!("pair index out of range")
}

/// An element of a direct sum of Hermitian matrix algebras.
#[derive(Clone, PartialEq)]
pub struct JordanElement<T> {
    blocks: Vec<KMatrix<T>>,
}

impl<T: fmt::Debug> fmt::Debug for JordanElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

impl<T: Scalar> JordanElement<T> {
    /// Validates every block as Hermitian (octonionic blocks at most 3×3)
    /// and stores the exactly-Hermitian upper-triangle copy.
    pub fn new(blocks: Vec<KMatrix<T>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Shape("an element needs at least one block".into()));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if !b.is_square() {
                return Err(Error::Shape(format!("block is {}x{}", b.rows(), b.cols())));
            }
            Factor::new(b.ring(), b.rows())?;
            if !b.is_hermitian(HERMITIAN_TOL) {
                return Err(Error::NotHermitian(format!(
                    "{}x{} block over {}",
                    b.rows(),
                    b.cols(),
                    b.ring()
                )));
            }
            out.push(b.hermitian_part_upper());
        }
        Ok(Self { blocks: out })
    }

    pub fn from_matrix(m: KMatrix<T>) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn zero(desc: &AlgebraDescriptor) -> Self {
        Self {
            blocks: desc
                .factors
                .iter()
                .map(|f| KMatrix::zeros(f.ring, f.n, f.n))
                .collect(),
        }
    }

    pub fn identity(desc: &AlgebraDescriptor) -> Self {
        Self {
            blocks: desc
                .factors
                .iter()
                .map(|f| KMatrix::identity(f.ring, f.n))
                .collect(),
        }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            factors: self
                .blocks
                .iter()
                .map(|b| Factor { ring: b.ring(), n: b.rows() })
                .collect(),
        }
    }

    pub fn blocks(&self) -> &[KMatrix<T>] {
        &self.blocks
    }

    /// The single block of a one-factor element.
    pub fn matrix(&self) -> &KMatrix<T> {
        &self.blocks[0]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::Shape(format!(
                "{} factors vs {}",
                self.blocks.len(),
                other.blocks.len()
            )));
        }
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if a.ring() != b.ring() {
                return Err(Error::RingMismatch(a.ring(), b.ring()));
            }
            if a.rows() != b.rows() {
                return Err(Error::Shape(format!("H_{} vs H_{}", a.rows(), b.rows())));
            }
        }
        Ok(())
    }

    fn map_blocks(&self, f: impl Fn(&KMatrix<T>) -> KMatrix<T>) -> Self {
        Self { blocks: self.blocks.iter().map(f).collect() }
    }

    fn zip_blocks(
        &self,
        other: &Self,
        f: impl Fn(&KMatrix<T>, &KMatrix<T>) -> Result<KMatrix<T>>,
    ) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map_blocks(|b| b.scale(k))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    /// `x ∘ y = (xy + yx)/2`.
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| {
            let ab = a.mul(b)?;
            let ba = b.mul(a)?;
            // The sum is Hermitian because conj(xy) = conj(y)conj(x) holds in
            // all four rings; re-symmetrising only removes rounding noise.
            Ok(ab.add(&ba)?.scale(&T::half()).hermitian_part_upper())
        })
    }

    pub fn square(&self) -> Self {
        self.jordan(self).expect("an element always matches itself")
    }

    /// `{x, y, z} = x∘(y∘z) − y∘(z∘x) + z∘(x∘y)`, evaluated only through the
    /// Jordan product so it is valid over O.
    pub fn triple(x: &Self, y: &Self, z: &Self) -> Result<Self> {
        let a = x.jordan(&y.jordan(z)?)?;
        let b = y.jordan(&z.jordan(x)?)?;
        let c = z.jordan(&x.jordan(y)?)?;
        a.sub(&b)?.add(&c)
    }

    /// Sum of the diagonal entries over all blocks.
    pub fn trace(&self) -> T {
        self.blocks.iter().fold(T::zero(), |acc, b| {
            (0..b.rows()).fold(acc, |acc, i| acc + b.get(i, i).re().clone())
        })
    }

    /// Trace form `tr(x∘y)`, computed entrywise as `Σ Re(x_ij conj(y_ij))`.
    pub fn inner(&self, other: &Self) -> Result<T> {
        self.check_same(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.entries().iter().zip(b.entries()))
            .fold(T::zero(), |acc, (x, y)| acc + x.real_inner(y)))
    }

    /// Squared trace norm `tr(x∘x)`.
    pub fn norm2(&self) -> T {
        self.blocks.iter().fold(T::zero(), |acc, b| acc + b.frobenius2())
    }

    /// `‖self − other‖² ≤ rel² · max(1, ‖other‖²)`; exact equality for
    /// rational scalars.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        match self.sub(other) {
            Ok(d) => crate::tol::negligible(&d.norm2(), &other.norm2(), rel),
            Err(_) => false,
        }
    }

    pub fn is_negligible(&self, rel: f64) -> bool {
        crate::tol::negligible(&self.norm2(), &T::one(), rel)
    }

    /// Coordinates in [`AlgebraDescriptor::canonical_basis`].
    pub fn coordinates(&self) -> Vec<T> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let n = b.rows();
            for i in 0..n {
                out.push(b.get(i, i).re().clone());
            }
            for i in 0..n {
                for j in i + 1..n {
                    out.extend(b.get(i, j).coords().iter().cloned());
                }
            }
        }
        out
    }

    pub fn from_coordinates(desc: &AlgebraDescriptor, coords: &[T]) -> Result<Self> {
        if coords.len() != desc.dim() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                desc.dim(),
                coords.len()
            )));
        }
        let mut blocks = Vec::with_capacity(desc.factors.len());
        let mut it = coords.iter().cloned();
        for f in &desc.factors {
            let mut m = KMatrix::zeros(f.ring, f.n, f.n);
            for i in 0..f.n {
                m.set(i, i, Hypercomplex::real(f.ring, it.next().unwrap()));
            }
            for i in 0..f.n {
                for j in i + 1..f.n {
                    let c: Vec<T> = it.by_ref().take(f.ring.dim()).collect();
                    let x = Hypercomplex::new(f.ring, c)?;
                    m.set(j, i, x.conj());
                    m.set(i, j, x);
                }
            }
            blocks.push(m);
        }
        Ok(Self { blocks })
    }

    /// Associative matrix product `x·y·z` blockwise. Only defined when every
    /// factor has associative coordinates; used as an independent check of
    /// the triple product.
    pub fn matrix_product3(x: &Self, y: &Self, z: &Self) -> Result<Self> {
        x.check_same(y)?;
        y.check_same(z)?;
        if !x.descriptor().is_associative() {
            return Err(Error::Unsupported("matrix products over O are not associative".into()));
        }
        let blocks = x
            .blocks
            .iter()
            .zip(&y.blocks)
            .zip(&z.blocks)
            .map(|((a, b), c)| Ok(a.mul(b)?.mul(c)?.hermitian_part_upper()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks })
    }

    /// Conjugation `w* x w` by a block-diagonal matrix `w` (one block per
    /// factor). Associative factors only.
    pub fn conjugate_by(&self, w: &[KMatrix<T>]) -> Result<Self> {
        if w.len() != self.blocks.len() {
            return Err(Error::Shape("one conjugating block per factor".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(w)
            .map(|(x, w)| {
                if !x.ring().is_associative() {
                    return Err(Error::Unsupported(
                        "conjugation is only supported in associative factors".into(),
                    ));
                }
                Ok(w.adjoint().mul(x)?.mul(w)?.hermitian_part_upper())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks })
    }

    pub fn cast<U: Scalar>(&self) -> JordanElement<U> {
        JordanElement { blocks: self.blocks.iter().map(|b| b.cast()).collect() }
    }
}
