use crate::division_ring::Hypercomplex;
use crate::error::{Error, Result};
use crate::logic::Projection;
use crate::omp::poset::FiniteOMP;
use crate::omp::states::StateSpace;
use crate::scalar::Scalar;

/// A finite set of projections of one associative factor `H_n(K)`, viewed
/// as an orthomodular poset, together with the vector states it inherits.
#[derive(Clone, Debug)]
pub struct MatrixSublogic<T> {
    pub omp: FiniteOMP,
    /// Indexed like the elements of `omp`.
    pub projections: Vec<Projection<T>>,
    pub states: StateSpace<T>,
}

/// `μ_ξ(x) = Re(ξ* x ξ) / ξ*ξ`; exact for rational `ξ`, normalised or not.
pub fn vector_state<T: Scalar>(xi: &[Hypercomplex<T>], x: &Projection<T>) -> T {
    let m = x.element().matrix();
    let mut num = T::zero();
    for (i, a) in xi.iter().enumerate() {
        for (j, b) in xi.iter().enumerate() {
            num = num + (&(&a.conj() * m.get(i, j)) * b).re().clone();
        }
    }
    let den = xi.iter().fold(T::zero(), |acc, a| acc + a.norm2());
    num / den
}

/// Builds the sublogic on `named` (0 and I are added when absent). The set
/// must be closed under complements. Without explicit `state_vectors` the
/// coordinate vectors and every nonzero column of every listed projection
/// are used; each column lies in the range of its projection.
pub fn matrix_sublogic<T: Scalar>(
    named: Vec<(String, Projection<T>)>,
    state_vectors: &[Vec<Hypercomplex<T>>],
) -> Result<MatrixSublogic<T>> {
    let first = named.first().ok_or_else(|| Error::Precondition("no projections given".into()))?;
    let desc = first.1.descriptor();
    if desc.factors().len() != 1 || !desc.is_associative() {
        return Err(Error::Unsupported("sublogics need a single associative factor".into()));
    }
    let (ring, n) = (desc.factors()[0].ring, desc.factors()[0].n);
    let mut names = Vec::new();
    let mut projs: Vec<Projection<T>> = Vec::new();
    let find = |projs: &[Projection<T>], x: &Projection<T>| {
        projs.iter().position(|y| y.element().approx_eq(x.element(), crate::tol::EPS_PROJ))
    };
    for (name, p) in named {
        if p.descriptor() != desc {
            return Err(Error::Shape("projections live in different algebras".into()));
        }
        if find(&projs, &p).is_none() {
            names.push(name);
            projs.push(p);
        }
    }
    for (name, p) in [("0", Projection::zero(&desc)), ("1", Projection::identity(&desc))] {
        if find(&projs, &p).is_none() {
            names.push(name.to_string());
            projs.push(p);
        }
    }
    let k = projs.len();
    let mut order = Vec::new();
    let mut comp = Vec::new();
    let mut joins = Vec::new();
    for a in 0..k {
        let c = find(&projs, &projs[a].orthocomplement())
            .ok_or_else(|| Error::Construction(format!("complement of {} is missing", names[a])))?;
        comp.push((names[a].clone(), names[c].clone()));
        for b in 0..k {
            if projs[a].leq(&projs[b])? {
                order.push((names[a].clone(), names[b].clone()));
            }
            if a < b && projs[a].is_orthogonal(&projs[b])? {
                let sum = projs[a].orthogonal_join(&projs[b])?;
                if let Some(j) = find(&projs, &sum) {
                    joins.push((names[a].clone(), names[b].clone(), names[j].clone()));
                }
            }
        }
    }
    let omp = FiniteOMP::from_raw(names, &order, &comp, &joins)?;
    let mut vectors: Vec<Vec<Hypercomplex<T>>> = state_vectors.to_vec();
    if vectors.is_empty() {
        for i in 0..n {
            vectors.push((0..n).map(|j| if i == j { Hypercomplex::one(ring) } else { Hypercomplex::zero(ring) }).collect());
        }
        for p in &projs {
            let m = p.element().matrix();
            for j in 0..n {
                let col: Vec<_> = (0..n).map(|i| m.get(i, j).clone()).collect();
                if col.iter().any(|x| !x.is_zero()) {
                    vectors.push(col);
                }
            }
        }
    }
    if let Some(bad) = vectors.iter().find(|v| v.len() != n || v.iter().all(|x| x.is_zero())) {
        return Err(Error::Shape(format!("state vector of length {} is unusable", bad.len())));
    }
    let states = vectors.iter().map(|xi| projs.iter().map(|p| vector_state(xi, p)).collect()).collect();
    Ok(MatrixSublogic { omp, projections: projs, states: StateSpace::Hull(states) })
}
