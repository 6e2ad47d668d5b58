//! The projection lattice `L_A = {p ∈ A | p² = p}` of a Jordan algebra.

use crate::division_ring::Ring;
use crate::error::{Error, Result};
use crate::jordan::linalg::{from_real_representation, real_representation, symmetric_eigen, Dense};
use crate::jordan::{AlgebraDescriptor, JordanElement, KMatrix};
use crate::scalar::Scalar;
use crate::tol::{negligible, EPS_PROJ};

/// An idempotent element, validated once at construction.
#[derive(Clone, PartialEq)]
pub struct Projection<T> {
    element: JordanElement<T>,
}

impl<T: std::fmt::Debug> std::fmt::Debug for Projection<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Projection").field(&self.element).finish()
    }
}

impl<T: Scalar> Projection<T> {
    /// Accepts `x` when `‖x∘x − x‖ ≤ ε_proj · max(1, ‖x‖)`.
    pub fn new(x: JordanElement<T>) -> Result<Self> {
        let defect = x.square().sub(&x)?.norm2();
        if !negligible(&defect, &x.norm2(), EPS_PROJ) {
            let scale = x.norm2().to_f64().max(1.0);
            return Err(Error::NotProjection((defect.to_f64() / scale).sqrt()));
        }
        Ok(Self { element: x })
    }

    pub fn from_matrix(m: KMatrix<T>) -> Result<Self> {
        Self::new(JordanElement::from_matrix(m)?)
    }

    pub fn zero(desc: &AlgebraDescriptor) -> Self {
        Self { element: JordanElement::zero(desc) }
    }

    pub fn identity(desc: &AlgebraDescriptor) -> Self {
        Self { element: JordanElement::identity(desc) }
    }

    pub fn element(&self) -> &JordanElement<T> {
        &self.element
    }

    pub fn into_element(self) -> JordanElement<T> {
        self.element
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.element.descriptor()
    }

    pub fn trace(&self) -> T {
        self.element.trace()
    }

    /// Traces of projections are ranks, so anything below one half is zero.
    pub fn is_zero(&self) -> bool {
        self.trace() < T::half()
    }

    pub fn rank(&self) -> usize {
        self.trace().to_f64().round().max(0.0) as usize
    }

    /// `p' = I − p`.
    pub fn orthocomplement(&self) -> Self {
        let id = JordanElement::identity(&self.descriptor());
        Self { element: id.sub(&self.element).expect("same algebra") }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.descriptor(), other.descriptor());
        if a != b {
            return Err(Error::Shape(format!("projections live in {a:?} and {b:?}")));
        }
        Ok(())
    }

    /// `p ≤ q` iff `p∘q = p`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        let d = self.element.jordan(&other.element)?.sub(&self.element)?;
        Ok(negligible(&d.norm2(), &self.element.norm2(), EPS_PROJ))
    }

    /// `p ⊥ q` iff `p∘q = 0`.
    pub fn is_orthogonal(&self, other: &Self) -> Result<bool> {
        let pq = self.element.jordan(&other.element)?;
        Ok(negligible(&pq.norm2(), &self.element.norm2(), EPS_PROJ))
    }

    /// Operator commutation `p∘(q∘x) = q∘(p∘x)`, tested on the canonical
    /// basis of the ambient algebra.
    pub fn is_compatible(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        let (p, q) = (&self.element, &other.element);
        for x in self.descriptor().canonical_basis::<T>() {
            let lhs = p.jordan(&q.jordan(&x)?)?;
            let rhs = q.jordan(&p.jordan(&x)?)?;
            if !negligible(&lhs.sub(&rhs)?.norm2(), &x.norm2(), EPS_PROJ) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The infimum `p ∧ q`. Compatible pairs give `p∘q`; otherwise the
    /// projection onto `range p ∩ range q` is computed in the real
    /// representation, which exists only over associative rings.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_compatible(other)? {
            let pq = self.element.jordan(&other.element)?;
            return Self::new(pq);
        }
        let blocks = self
            .element
            .blocks()
            .iter()
            .zip(other.element.blocks())
            .map(|(p, q)| block_meet(p, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(JordanElement::new(blocks)?)
    }

    /// `p + q` for orthogonal `p, q`.
    pub fn orthogonal_join(&self, other: &Self) -> Result<Self> {
        if !self.is_orthogonal(other)? {
            return Err(Error::Precondition("join is only defined for orthogonal projections".into()));
        }
        Ok(Self { element: self.element.add(&other.element)? })
    }

    /// `p` is an atom iff `{p, x, p} ∈ R·p` for every basis element `x`.
    pub fn is_atom(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroProjection);
        }
        let p = &self.element;
        let pp = p.norm2();
        for x in self.descriptor().canonical_basis::<T>() {
            let t = JordanElement::triple(p, &x, p)?;
            let c = t.inner(p)? / pp.clone();
            let r = t.sub(&p.scale(&c))?;
            if !negligible(&r.norm2(), &x.norm2(), EPS_PROJ) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `w* p w` for a block-diagonal unitary `w`.
    pub fn conjugate_by(&self, w: &[KMatrix<T>]) -> Result<Self> {
        Self::new(self.element.conjugate_by(w)?)
    }

    pub fn cast<U: Scalar>(&self) -> Projection<U> {
        Projection { element: self.element.cast() }
    }
}

/// Projection onto `range p ∩ range q` within one associative block: the
/// null space of `(I − p) + (I − q)`.
fn block_meet<T: Scalar>(p: &KMatrix<T>, q: &KMatrix<T>) -> Result<KMatrix<T>> {
    let ring = p.ring();
    if ring == Ring::Octonion {
        return Err(Error::Unsupported(
            "meets of incompatible projections over O are not computable".into(),
        ));
    }
    let rp = real_representation(p)?;
    let rq = real_representation(q)?;
    let n = rp.rows;
    let id = Dense::identity(n);
    let m = id.add(&id).sub(&rp).sub(&rq);
    let proj = if T::EXACT {
        Dense::column_projector(&m.null_space(0.0), 0.0)?
    } else {
        let (values, vectors) = symmetric_eigen(&m.to_nalgebra());
        let mut out = Dense::<T>::zeros(n, n);
        for (k, _) in values.iter().enumerate().filter(|(_, &v)| v.abs() <= EPS_PROJ) {
            for i in 0..n {
                for j in 0..n {
                    let v = out[(i, j)].clone()
                        + T::from_f64(vectors[(i, k)] * vectors[(j, k)]);
                    out[(i, j)] = v;
                }
            }
        }
        out
    };
    Ok(from_real_representation(ring, &proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division_ring::Hypercomplex;
    use crate::scalar::Rational;

    fn diag(ring: Ring, d: &[i64]) -> Projection<Rational> {
        let v: Vec<Rational> = d.iter().map(|&x| Rational::from_ratio(x, 1)).collect();
        Projection::from_matrix(KMatrix::diagonal(ring, &v)).unwrap()
    }

    /// The 2×2 pair `a = diag(1,0)`, `b = [[s, r], [r, 1−s]]`, `r² = s(1−s)`.
    fn pair_ab(s: (i64, i64), r: (i64, i64)) -> (Projection<Rational>, Projection<Rational>) {
        let ring = Ring::Real;
        let a = diag(ring, &[1, 0]);
        let s = Rational::from_ratio(s.0, s.1);
        let r = Rational::from_ratio(r.0, r.1);
        let m = KMatrix::from_fn(ring, 2, 2, |i, j| {
            let v = match (i, j) {
                (0, 0) => s.clone(),
                (1, 1) => Rational::from_ratio(1, 1) - s.clone(),
                _ => r.clone(),
            };
            Hypercomplex::real(ring, v)
        });
        (a, Projection::from_matrix(m).unwrap())
    }

    #[test]
    fn rejects_non_idempotent() {
        let ring = Ring::Complex;
        let x = KMatrix::diagonal(ring, &[1.0, 0.5]);
        assert!(matches!(Projection::from_matrix(x), Err(Error::NotProjection(_))));
    }

    #[test]
    fn complement_and_order() {
        let p = diag(Ring::Real, &[1, 0]);
        assert_eq!(p.orthocomplement(), diag(Ring::Real, &[0, 1]));
        assert_eq!(p.orthocomplement().orthocomplement(), p);
        let id = Projection::identity(&p.descriptor());
        assert!(p.leq(&id).unwrap());
        assert!(Projection::<Rational>::zero(&p.descriptor()).orthocomplement() == id);
        assert!(p.is_orthogonal(&p.orthocomplement()).unwrap());
        assert!(p.is_compatible(&p.orthocomplement()).unwrap());
    }

    #[test]
    fn incompatible_pair_has_zero_meet() {
        // s = 4/5 with r = 2/5.
        let (a, b) = pair_ab((4, 5), (2, 5));
        assert!(!a.leq(&b).unwrap());
        assert!(!a.is_orthogonal(&b).unwrap());
        assert!(!a.is_compatible(&b).unwrap());
        assert!(a.meet(&b).unwrap().is_zero());
        assert!(a.cast::<f64>().meet(&b.cast()).unwrap().is_zero());
        assert_eq!(a.meet(&a).unwrap(), a);
        assert!(a.meet(&a.orthocomplement()).unwrap().is_zero());
    }

    #[test]
    fn meet_of_overlapping_planes() {
        // span{e1, e2} ∧ span{e1, (e2+e3)/√2} = span{e1} over H.
        let ring = Ring::Quaternion;
        let p = diag(ring, &[1, 1, 0]).cast::<f64>();
        let h = |x: f64| Hypercomplex::real(ring, x);
        let q = Projection::from_matrix(KMatrix::from_fn(ring, 3, 3, |i, j| match (i, j) {
            (0, 0) => h(1.0),
            (1, 1) | (2, 2) | (1, 2) | (2, 1) => h(0.5),
            _ => h(0.0),
        }))
        .unwrap();
        let m = p.meet(&q).unwrap();
        let expected = diag(ring, &[1, 0, 0]).cast::<f64>();
        assert!(m.element().approx_eq(expected.element(), 1e-10));
    }

    #[test]
    fn joins_and_atoms() {
        let e1 = diag(Ring::Complex, &[1, 0, 0]);
        let e2 = diag(Ring::Complex, &[0, 1, 0]);
        assert_eq!(e1.orthogonal_join(&e2).unwrap(), diag(Ring::Complex, &[1, 1, 0]));
        assert!(e1.orthogonal_join(&e1).is_err());
        assert!(e1.is_atom().unwrap());
        assert!(!diag(Ring::Complex, &[1, 1, 0]).is_atom().unwrap());
        assert!(matches!(diag(Ring::Real, &[0, 0]).is_atom(), Err(Error::ZeroProjection)));
        let o = diag(Ring::Octonion, &[0, 0, 1]);
        assert!(o.is_atom().unwrap());
    }
}
