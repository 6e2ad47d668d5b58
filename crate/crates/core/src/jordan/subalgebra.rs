use crate::error::{Error, Result};
use crate::jordan::element::{AlgebraDescriptor, JordanElement};
use crate::scalar::Scalar;
use crate::tol::EPS_RANK;

/// A Jordan subalgebra given by a basis that is orthogonal for the trace
/// form. In floating mode the basis is also normalised; exact rationals keep
/// the unnormalised orthogonal basis since norms are generally irrational.
#[derive(Clone, Debug)]
pub struct Subalgebra<T> {
    parent: AlgebraDescriptor,
    basis: Vec<JordanElement<T>>,
}

impl<T: Scalar> Subalgebra<T> {
    pub fn parent(&self) -> &AlgebraDescriptor {
        &self.parent
    }

    pub fn basis(&self) -> &[JordanElement<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal projection onto the subalgebra.
    pub fn project(&self, x: &JordanElement<T>) -> Result<JordanElement<T>> {
        let mut out = JordanElement::zero(&self.parent);
        for b in &self.basis {
            let c = x.inner(b)? / b.norm2();
            out = out.add(&b.scale(&c))?;
        }
        Ok(out)
    }

    pub fn contains(&self, x: &JordanElement<T>, rel: f64) -> Result<bool> {
        let r = x.sub(&self.project(x)?)?;
        Ok(crate::tol::negligible(&r.norm2(), &x.norm2(), rel))
    }
}

/// Incremental Gram–Schmidt against the trace form.
struct Orthogonalizer<T> {
    basis: Vec<JordanElement<T>>,
    norms: Vec<T>,
}

impl<T: Scalar> Orthogonalizer<T> {
    fn residual(&self, v: &JordanElement<T>) -> Result<JordanElement<T>> {
        let mut r = v.clone();
        // Two passes keep floating-point orthogonality at working precision.
        let passes = if T::EXACT { 1 } else { 2 };
        for _ in 0..passes {
            for (b, n) in self.basis.iter().zip(&self.norms) {
                let c = r.inner(b)? / n.clone();
                if !c.is_zero() {
                    r = r.sub(&b.scale(&c))?;
                }
            }
        }
        Ok(r)
    }

    /// Adds `v` when it is independent of the current span; returns whether
    /// it was added.
    fn push(&mut self, v: &JordanElement<T>) -> Result<bool> {
        self.push_scaled(v, v.norm2())
    }

    /// Like `push`, but the independence test is relative to `scale` (a
    /// squared norm). Products pass the product of their factors' norms, so
    /// a product that vanishes up to rounding is not mistaken for a new
    /// direction.
    fn push_scaled(&mut self, v: &JordanElement<T>, scale: T) -> Result<bool> {
        let vn = v.norm2();
        if vn.is_zero() {
            return Ok(false);
        }
        let r = self.residual(v)?;
        let rn = r.norm2();
        let tol = T::tolerance(EPS_RANK);
        if rn <= tol.clone() * tol * scale {
            return Ok(false);
        }
        let (r, rn) = match rn.sqrt() {
            Some(len) if !T::EXACT => (r.scale(&(T::one() / len)), T::one()),
            _ => (r, rn),
        };
        self.basis.push(r);
        self.norms.push(rn);
        Ok(true)
    }
}

/// The Jordan subalgebra generated by `generators` (plus the unit when
/// `include_unit`), computed as the fixed point of closing the span under
/// the Jordan product.
pub fn generated_subalgebra<T: Scalar>(
    generators: &[JordanElement<T>],
    include_unit: bool,
) -> Result<Subalgebra<T>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Precondition("at least one generator is required".into()))?;
    let parent = first.descriptor();
    let mut ortho = Orthogonalizer { basis: Vec::new(), norms: Vec::new() };
    if include_unit {
        ortho.push(&JordanElement::identity(&parent))?;
    }
    for g in generators {
        if g.descriptor() != parent {
            return Err(Error::Shape("generators live in different algebras".into()));
        }
        if g.norm2().is_zero() {
            return Err(Error::Precondition("generators must be nonzero".into()));
        }
        ortho.push(g)?;
    }
    // Every product of a new element with the current basis is tried once.
    let mut done = 0;
    while done < ortho.basis.len() {
        let current = ortho.basis[done].clone();
        for k in 0..=done {
            let prod = current.jordan(&ortho.basis[k])?;
            let scale = current.norm2() * ortho.basis[k].norm2();
            ortho.push_scaled(&prod, scale)?;
        }
        done += 1;
        if ortho.basis.len() > parent.dim() {
            return Err(Error::Shape("subalgebra closure exceeded the algebra dimension".into()));
        }
    }
    Ok(Subalgebra { parent, basis: ortho.basis })
}
