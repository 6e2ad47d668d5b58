//! The four normed division algebras R, C, H and O.
//!
//! Elements carry a [`Ring`] tag and up to eight real coordinates on the
//! basis `e0 = 1, e1, ..., e7`. Each ring is obtained from the previous one
//! by Cayley–Dickson doubling with the convention
//!
//! ```text
//! (a, b)(c, d) = (ac - d̄b, da + bc̄),      conj(a, b) = (ā, -b)
//! ```
//!
//! where an element of the doubled ring is `a + b·e_h` with `h` the old
//! dimension. The resulting basis table (row `e_i`, column `e_j`, entry
//! `e_i e_j`) is
//!
//! ```text
//!        e0   e1   e2   e3   e4   e5   e6   e7
//!   e0   e0   e1   e2   e3   e4   e5   e6   e7
//!   e1   e1  -e0   e3  -e2   e5  -e4  -e7   e6
//!   e2   e2  -e3  -e0   e1   e6   e7  -e4  -e5
//!   e3   e3   e2  -e1  -e0   e7  -e6   e5  -e4
//!   e4   e4  -e5  -e6  -e7  -e0   e1   e2   e3
//!   e5   e5   e4  -e7   e6  -e1  -e0  -e3   e2
//!   e6   e6   e7   e4  -e5  -e2   e3  -e0  -e1
//!   e7   e7  -e6   e5   e4  -e3  -e2   e1  -e0
//! ```
//!
//! The upper-left 1×1, 2×2 and 4×4 corners are the tables of R, C (`e1 = i`)
//! and H (`e1 = i, e2 = j, e3 = k`). [`cayley_dickson_product`] evaluates the
//! doubling recursively and is kept as the reference the table is checked
//! against.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Ring {
    pub const ALL: [Ring; 4] = [Ring::Real, Ring::Complex, Ring::Quaternion, Ring::Octonion];

    /// Real dimension: 1, 2, 4 or 8.
    pub fn dim(self) -> usize {
        match self {
            Ring::Real => 1,
            Ring::Complex => 2,
            Ring::Quaternion => 4,
            Ring::Octonion => 8,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Ring::Real => "R",
            Ring::Complex => "C",
            Ring::Quaternion => "H",
            Ring::Octonion => "O",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Ring> {
        match tag {
            "R" => Ok(Ring::Real),
            "C" => Ok(Ring::Complex),
            "H" => Ok(Ring::Quaternion),
            "O" => Ok(Ring::Octonion),
            other => Err(Error::Parse(format!("unknown ring tag {other:?}"))),
        }
    }

    pub fn is_associative(self) -> bool {
        self != Ring::Octonion
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `BASIS_PRODUCT[i][j] = (sign, k)` with `e_i e_j = sign · e_k`.
const BASIS_PRODUCT: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

/// Product of two coordinate vectors of equal power-of-two length by the
/// recursive Cayley–Dickson formula.
pub fn cayley_dickson_product<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 1 {
        return vec![a[0].clone() * b[0].clone()];
    }
    assert!(n.is_power_of_two());
    let h = n / 2;
    let (x, y) = a.split_at(h);
    let (z, w) = b.split_at(h);
    let xz = cayley_dickson_product(x, z);
    let wbar_y = cayley_dickson_product(&conj_slice(w), y);
    let wx = cayley_dickson_product(w, x);
    let y_zbar = cayley_dickson_product(y, &conj_slice(z));
    xz.into_iter()
        .zip(wbar_y)
        .map(|(p, q)| p - q)
        .chain(wx.into_iter().zip(y_zbar).map(|(p, q)| p + q))
        .collect()
}

// Conjugation negates every imaginary coordinate at every doubling level.
fn conj_slice<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -c.clone();
    }
    out
}

/// An element of R, C, H or O.
#[derive(Clone, PartialEq)]
pub struct Hypercomplex<T> {
    ring: Ring,
    coords: [T; 8],
}

impl<T: fmt::Debug> fmt::Debug for Hypercomplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.ring.tag(), &self.coords[..self.ring.dim()])
    }
}

impl<T: Scalar> Hypercomplex<T> {
    /// Builds from exactly `ring.dim()` coordinates.
    pub fn new(ring: Ring, coords: Vec<T>) -> Result<Self> {
        if coords.len() != ring.dim() {
            return Err(Error::Shape(format!(
                "{} needs {} coordinates, got {}",
                ring,
                ring.dim(),
                coords.len()
            )));
        }
        let mut out = Self::zero(ring);
        for (slot, c) in out.coords.iter_mut().zip(coords) {
            *slot = c;
        }
        Ok(out)
    }

    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            coords: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::real(ring, T::one())
    }

    pub fn real(ring: Ring, x: T) -> Self {
        let mut out = Self::zero(ring);
        out.coords[0] = x;
        out
    }

    /// The basis unit `e_k`.
    pub fn unit(ring: Ring, k: usize) -> Self {
        assert!(k < ring.dim(), "basis index {k} out of range for {ring}");
        let mut out = Self::zero(ring);
        out.coords[k] = T::one();
        out
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coords(&self) -> &[T] {
        &self.coords[..self.ring.dim()]
    }

    pub fn re(&self) -> &T {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    /// True when every imaginary coordinate vanishes.
    pub fn is_real(&self) -> bool {
        self.coords()[1..].iter().all(|c| c.is_zero())
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for c in out.coords[1..self.ring.dim()].iter_mut() {
            *c = -c.clone();
        }
        out
    }

    /// Sum of squared coordinates, `x·conj(x)`.
    pub fn norm2(&self) -> T {
        self.coords()
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm2();
        if n.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(&(T::one() / n)))
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, k: &T) -> Self {
        let mut out = self.clone();
        for c in out.coords[..self.ring.dim()].iter_mut() {
            *c = c.clone() * k.clone();
        }
        out
    }

    /// Real part of `self · conj(other)`, the Euclidean inner product of the
    /// coordinate vectors.
    pub fn real_inner(&self, other: &Self) -> T {
        self.coords()
            .iter()
            .zip(other.coords())
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords).take(self.ring.dim()) {
            *a = a.clone() + b.clone();
        }
        out
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords).take(self.ring.dim()) {
            *a = a.clone() - b.clone();
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.ring.dim();
        let mut out = Self::zero(self.ring);
        for i in 0..d {
            let a = &self.coords[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                let b = &other.coords[j];
                if b.is_zero() {
                    continue;
                }
                let (sign, k) = BASIS_PRODUCT[i][j];
                let term = a.clone() * b.clone();
                let slot = &mut out.coords[k as usize];
                *slot = if sign > 0 {
                    slot.clone() + term
                } else {
                    slot.clone() - term
                };
            }
        }
        out
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(x: &Self, y: &Self, z: &Self) -> Result<Self> {
        x.checked_mul(y)?
            .checked_mul(z)?
            .checked_sub(&x.checked_mul(&y.checked_mul(z)?)?)
    }

    /// Converts coordinates to another scalar type through `f64`.
    pub fn cast<U: Scalar>(&self) -> Hypercomplex<U> {
        Hypercomplex {
            ring: self.ring,
            coords: std::array::from_fn(|k| U::from_f64(self.coords[k].to_f64())),
        }
    }
}

// Operators panic on mismatched rings; use the `checked_*` methods when the
// tags are not known to agree.
impl<T: Scalar> Add for &Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn add(self, rhs: Self) -> Hypercomplex<T> {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<T: Scalar> Sub for &Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn sub(self, rhs: Self) -> Hypercomplex<T> {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<T: Scalar> Mul for &Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn mul(self, rhs: Self) -> Hypercomplex<T> {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl<T: Scalar> Neg for &Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn neg(self) -> Hypercomplex<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Add for Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn add(self, rhs: Self) -> Hypercomplex<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn sub(self, rhs: Self) -> Hypercomplex<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn mul(self, rhs: Self) -> Hypercomplex<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Hypercomplex<T> {
    type Output = Hypercomplex<T>;
    fn neg(self) -> Hypercomplex<T> {
        -&self
    }
}
