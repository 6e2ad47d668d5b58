//! Transition probabilities between projections.
//!
//! `P(q|p) = s` exists iff `{p,q,p} = s·p`. The value is extracted by
//! projecting `{p,q,p}` onto `R·p` with the trace form, and the residual of
//! that fit decides existence. [`transition_oracle`] computes the same
//! quantity independently from the spectrum of the compression of `q` to
//! the range of `p`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::jordan::linalg::{real_representation, symmetric_eigen, Dense};
use crate::jordan::{generated_subalgebra, JordanElement, KMatrix};
use crate::logic::Projection;
use crate::scalar::Scalar;
use crate::tol::{close, negligible, EPS_ORACLE, EPS_PROJ, EPS_RANK, EPS_SYMMETRY, EPS_TP};
use crate::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionResult<T> {
    pub exists: bool,
    /// Present iff `exists`; clamped into `[0, 1]`.
    pub s: Option<T>,
    /// `‖{p,q,p} − s·p‖ / ‖p‖` for the algebraic path, the spread of the
    /// compression spectrum for the oracle.
    pub residual: f64,
}

impl<T: Scalar> TransitionResult<T> {
    pub fn value(&self) -> Option<&T> {
        self.s.as_ref()
    }

    fn require(&self) -> Result<T> {
        self.s.clone().ok_or(Error::NoTransition(self.residual))
    }
}

fn nonzero<T: Scalar>(p: &Projection<T>) -> Result<()> {
    if p.is_zero() {
        Err(Error::ZeroProjection)
    } else {
        Ok(())
    }
}

/// `P(q|p)` through the identity `{p,q,p} = s·p`.
pub fn transition_probability<T: Scalar>(
    p: &Projection<T>,
    q: &Projection<T>,
) -> Result<TransitionResult<T>> {
    nonzero(p)?;
    let (pe, qe) = (p.element(), q.element());
    let t = JordanElement::triple(pe, qe, pe)?;
    let pp = pe.norm2();
    let s = t.inner(pe)? / pp.clone();
    let r2 = t.sub(&pe.scale(&s))?.norm2();
    let residual = (r2.to_f64() / pp.to_f64()).sqrt();
    let exists = negligible(&r2, &pp, EPS_TP)
        && s >= -T::tolerance(EPS_TP)
        && s <= T::one() + T::tolerance(EPS_TP);
    Ok(TransitionResult { exists, s: exists.then(|| s.clamp_unit()), residual })
}

/// Orthonormal basis (columns) of the range of a real symmetric projector.
fn range_basis(m: &DMatrix<f64>) -> DMatrix<f64> {
    let (values, vectors) = symmetric_eigen(m);
    let keep: Vec<usize> = (0..values.len()).filter(|&k| values[k] > 0.5).collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |i, k| vectors[(i, keep[k])])
}

/// Eigenvalues of the compression `V* q V`, `V` an orthonormal basis of
/// `range p`, over all blocks. Octonionic blocks have no representation.
pub fn compression_spectrum<T: Scalar>(p: &Projection<T>, q: &Projection<T>) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (pb, qb) in p.element().blocks().iter().zip(q.element().blocks()) {
        if pb.ring() == Ring::Octonion {
            return Err(Error::Unsupported("spectral oracle unavailable over O".into()));
        }
        if pb.rows() != qb.rows() || pb.ring() != qb.ring() {
            return Err(Error::Shape("projections live in different algebras".into()));
        }
        let rp = real_representation(&pb.cast::<f64>())?.to_nalgebra();
        let rq = real_representation(&qb.cast::<f64>())?.to_nalgebra();
        let v = range_basis(&rp);
        if v.ncols() == 0 {
            continue;
        }
        let c = v.transpose() * rq * &v;
        let c = (&c + c.transpose()) * 0.5;
        out.extend(symmetric_eigen(&c).0);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// `P(q|p)` from the numerical range of the compression of `q` to `range p`:
/// states with `μ(p) = 1` are exactly the densities supported there, so the
/// value exists iff that compression is a multiple of the identity.
pub fn transition_oracle<T: Scalar>(
    p: &Projection<T>,
    q: &Projection<T>,
) -> Result<TransitionResult<f64>> {
    nonzero(p)?;
    let spec = compression_spectrum(p, q)?;
    let (lo, hi) = (spec[0], spec[spec.len() - 1]);
    let spread = hi - lo;
    let exists = spread <= EPS_ORACLE;
    Ok(TransitionResult {
        exists,
        s: exists.then(|| (0.5 * (lo + hi)).clamp(0.0, 1.0)),
        residual: spread,
    })
}

#[derive(Clone, Debug)]
pub struct Symmetry<T> {
    pub v: JordanElement<T>,
    /// Largest of `‖v∘v − I‖`, `‖{v,p,v} − q‖`, `‖{v,q,v} − p‖`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct IsoclinicReport<T> {
    pub forward: TransitionResult<T>,
    pub backward: TransitionResult<T>,
    pub isoclinic: bool,
    pub symmetry: Option<Symmetry<T>>,
}

fn symmetry_residual<T: Scalar>(v: &JordanElement<T>, p: &JordanElement<T>, q: &JordanElement<T>) -> Result<f64> {
    let id = JordanElement::identity(&v.descriptor());
    let r = [
        v.square().sub(&id)?,
        JordanElement::triple(v, p, v)?.sub(q)?,
        JordanElement::triple(v, q, v)?.sub(p)?,
    ];
    Ok(r.iter().map(|x| x.norm2().to_f64().sqrt()).fold(0.0, f64::max))
}

fn build_symmetry<T: Scalar>(p: &JordanElement<T>, q: &JordanElement<T>, c: &T) -> Result<JordanElement<T>> {
    let one_c = T::one() + c.clone();
    let id = JordanElement::identity(&p.descriptor());
    let pq = p.jordan(q)?;
    id.neg()
        .add(&p.add(q)?.scale(&(T::one() / one_c.clone())))?
        .add(&pq.scale(&(T::two() / (c.clone() * one_c))))
}

/// `v = −I + (p+q)/(1+c) + 2(p∘q)/(c(1+c))` with `c = √s`. On the unit
/// `e` of `A_{p,q}` this is the reflection exchanging `p` and `q`, and on
/// `I − e` it is `−1`.
fn symmetry_closed_form<T: Scalar>(
    p: &JordanElement<T>,
    q: &JordanElement<T>,
    s: &T,
) -> Result<Option<Symmetry<T>>> {
    let sym = match s.sqrt() {
        Some(c) => {
            let v = build_symmetry(p, q, &c)?;
            let residual = symmetry_residual(&v, p, q)?;
            Symmetry { v, residual }
        }
        None => {
            // Irrational √s in exact mode: build in floating point.
            let (pf, qf) = (p.cast::<f64>(), q.cast::<f64>());
            let v = build_symmetry(&pf, &qf, &s.to_f64().sqrt())?;
            let residual = symmetry_residual(&v, &pf, &qf)?;
            Symmetry { v: v.cast(), residual }
        }
    };
    Ok((sym.residual <= EPS_SYMMETRY).then_some(sym))
}

pub fn isoclinic_analysis<T: Scalar>(
    p: &Projection<T>,
    q: &Projection<T>,
) -> Result<IsoclinicReport<T>> {
    nonzero(p)?;
    nonzero(q)?;
    let forward = transition_probability(p, q)?;
    let backward = transition_probability(q, p)?;
    let (sym, isoclinic) = match (&forward.s, &backward.s) {
        (Some(a), Some(b)) if close(a, b, EPS_TP) => {
            let s = a.clone();
            let sym = if close(&s, &T::one(), EPS_TP) {
                let id = JordanElement::identity(&p.descriptor());
                Some(Symmetry { residual: symmetry_residual(&id, p.element(), q.element())?, v: id })
            } else if close(&s, &T::zero(), EPS_TP) {
                None
            } else {
                symmetry_closed_form(p.element(), q.element(), &s)?
            };
            (sym, true)
        }
        _ => (None, false),
    };
    Ok(IsoclinicReport { forward, backward, isoclinic, symmetry: sym })
}

#[derive(Clone, Debug)]
pub struct DecompositionReport<T> {
    pub q_o: Projection<T>,
    pub q_1: Projection<T>,
    pub s: T,
    /// `P(q_o|p)` and `P(p|q_o)`.
    pub forward: TransitionResult<T>,
    pub backward: TransitionResult<T>,
    pub q1_orthogonal_to_p: bool,
    pub q_o_leq_q: bool,
}

impl<T: Scalar> DecompositionReport<T> {
    /// All clauses: `q = q_o + q_1` holds by construction, `q_1 ⊥ p`, and
    /// both transition probabilities between `p` and `q_o` equal `s`.
    pub fn holds(&self) -> bool {
        let matches = |r: &TransitionResult<T>| r.s.as_ref().is_some_and(|v| close(v, &self.s, EPS_TP));
        self.q1_orthogonal_to_p && self.q_o_leq_q && matches(&self.forward) && matches(&self.backward)
    }
}

/// Splits `q = q_o + q_1` with `q_o = (1/s){q,p,q}` isoclinic to `p` and
/// `q_1 ⊥ p`.
pub fn decompose<T: Scalar>(p: &Projection<T>, q: &Projection<T>) -> Result<DecompositionReport<T>> {
    let tp = transition_probability(p, q)?;
    let s = tp.require()?;
    if close(&s, &T::zero(), EPS_TP) {
        return Err(Error::Precondition("decomposition needs P(q|p) ≠ 0".into()));
    }
    let qpq = JordanElement::triple(q.element(), p.element(), q.element())?;
    let q_o = Projection::new(qpq.scale(&(T::one() / s.clone())))?;
    let q_1 = Projection::new(q.element().sub(q_o.element())?)?;
    Ok(DecompositionReport {
        forward: transition_probability(p, &q_o)?,
        backward: transition_probability(&q_o, p)?,
        q1_orthogonal_to_p: q_1.is_zero() || q_1.is_orthogonal(p)?,
        q_o_leq_q: q_o.leq(q)?,
        q_o,
        q_1,
        s,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCase {
    Orthogonal,
    Subordinate,
    IsoclinicPlusOrthogonal,
}

impl PairCase {
    pub fn tag(self) -> &'static str {
        match self {
            PairCase::Orthogonal => "orthogonal",
            PairCase::Subordinate => "subordinate",
            PairCase::IsoclinicPlusOrthogonal => "isoclinic-plus-orthogonal",
        }
    }
}

/// Evidence that `span{p, q_o, p∘q_o}` is a copy of `H_2(R)`.
#[derive(Clone, Debug)]
pub struct H2Witness {
    /// Dimension of the subalgebra generated by `p` and `q_o`.
    pub dim: usize,
    /// Largest deviation among the three structure identities
    /// `p∘(p∘q) = (sp + p∘q)/2`, `q∘(p∘q) = (sq + p∘q)/2`,
    /// `(p∘q)² = (2s p∘q + sp + sq)/4`.
    pub identity_residual: f64,
    /// Largest `‖π(x∘y) − π(x)∘π(y)‖` over basis pairs, where `π` sends
    /// `p, q, p∘q` to `a, b, a∘b` in `H_2(R)`.
    pub homomorphism_residual: f64,
}

impl H2Witness {
    pub fn holds(&self, tol: f64) -> bool {
        self.dim == 3 && self.identity_residual <= tol && self.homomorphism_residual <= tol
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport<T> {
    pub case: PairCase,
    pub s: T,
    /// Dimension of the subalgebra generated by `p` and `q`.
    pub dim: usize,
    pub basis: Vec<JordanElement<T>>,
    pub decomposition: Option<DecompositionReport<T>>,
    pub witness: Option<H2Witness>,
}

/// Classifies the subalgebra `A_{p,q}` generated by a pair whose transition
/// probability exists.
pub fn classify_pair<T: Scalar>(p: &Projection<T>, q: &Projection<T>) -> Result<StructureReport<T>> {
    let s = transition_probability(p, q)?.require()?;
    let (pe, qe) = (p.element(), q.element());
    let dim = if q.is_zero() { 1 } else { generated_subalgebra(&[pe.clone(), qe.clone()], false)?.dim() };
    let nonzero_only = |v: Vec<JordanElement<T>>| -> Vec<JordanElement<T>> {
        v.into_iter().filter(|x| !x.is_negligible(EPS_PROJ)).collect()
    };
    if close(&s, &T::zero(), EPS_TP) {
        return Ok(StructureReport {
            case: PairCase::Orthogonal,
            s: T::zero(),
            dim,
            basis: nonzero_only(vec![pe.clone(), qe.clone()]),
            decomposition: None,
            witness: None,
        });
    }
    if close(&s, &T::one(), EPS_TP) {
        return Ok(StructureReport {
            case: PairCase::Subordinate,
            s: T::one(),
            dim,
            basis: nonzero_only(vec![pe.clone(), qe.sub(pe)?]),
            decomposition: None,
            witness: None,
        });
    }
    let dec = decompose(p, q)?;
    let qo = dec.q_o.element();
    let witness = h2_witness(pe, qo, &s)?;
    let basis = nonzero_only(vec![pe.clone(), qo.clone(), pe.jordan(qo)?, dec.q_1.element().clone()]);
    Ok(StructureReport {
        case: PairCase::IsoclinicPlusOrthogonal,
        s,
        dim,
        basis,
        decomposition: Some(dec),
        witness: Some(witness),
    })
}

/// The matrices `a = [[1,0],[0,0]]` and `b = [[s, r],[r, 1−s]]`,
/// `r = √(s(1−s))`, in floating point.
pub fn h2_pair(s: f64) -> (JordanElement<f64>, JordanElement<f64>) {
    let ring = Ring::Real;
    let r = (s * (1.0 - s)).max(0.0).sqrt();
    let a = KMatrix::diagonal(ring, &[1.0, 0.0]);
    let b = KMatrix::from_fn(ring, 2, 2, |i, j| {
        crate::Hypercomplex::real(ring, match (i, j) {
            (0, 0) => s,
            (1, 1) => 1.0 - s,
            _ => r,
        })
    });
    (
        JordanElement::from_matrix(a).expect("symmetric"),
        JordanElement::from_matrix(b).expect("symmetric"),
    )
}

fn h2_witness<T: Scalar>(p: &JordanElement<T>, q: &JordanElement<T>, s: &T) -> Result<H2Witness> {
    let dim = generated_subalgebra(&[p.clone(), q.clone()], false)?.dim();
    let pq = p.jordan(q)?;
    let half = T::half();
    let quarter = half.clone() * half.clone();
    let ids = [
        p.jordan(&pq)?.sub(&p.scale(s).add(&pq)?.scale(&half))?,
        q.jordan(&pq)?.sub(&q.scale(s).add(&pq)?.scale(&half))?,
        pq.square().sub(&pq.scale(&(T::two() * s.clone())).add(&p.scale(s))?.add(&q.scale(s))?.scale(&quarter))?,
    ];
    let identity_residual = ids.iter().map(|x| x.norm2().to_f64().sqrt()).fold(0.0, f64::max);

    let basis = [p.clone(), q.clone(), pq];
    let (a, b) = h2_pair(s.to_f64());
    let image = [a.clone(), b.clone(), a.jordan(&b)?];
    let coords = |y: &JordanElement<T>| -> Result<Vec<f64>> { span_coordinates(&basis, y) };
    let pi = |c: &[f64]| -> Result<JordanElement<f64>> {
        image[0].scale(&c[0]).add(&image[1].scale(&c[1]))?.add(&image[2].scale(&c[2]))
    };
    let mut homomorphism_residual: f64 = 0.0;
    for i in 0..3 {
        for j in i..3 {
            let lhs = pi(&coords(&basis[i].jordan(&basis[j])?)?)?;
            let rhs = image[i].jordan(&image[j])?;
            homomorphism_residual = homomorphism_residual.max(lhs.sub(&rhs)?.norm2().sqrt());
        }
    }
    Ok(H2Witness { dim, identity_residual, homomorphism_residual })
}

/// Coordinates of `y` in `span(basis)` by the normal equations of the
/// trace form.
fn span_coordinates<T: Scalar>(basis: &[JordanElement<T>], y: &JordanElement<T>) -> Result<Vec<f64>> {
    let k = basis.len();
    let mut g = Dense::<T>::zeros(k, k);
    let mut rhs = Dense::<T>::zeros(k, 1);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = basis[i].inner(&basis[j])?;
        }
        rhs[(i, 0)] = basis[i].inner(y)?;
    }
    let sol = g.inverse(EPS_RANK)?.mul(&rhs);
    Ok((0..k).map(|i| sol[(i, 0)].to_f64()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceReport<T> {
    pub trace_p: T,
    pub trace_q: T,
    /// `P(p|q)` also exists and equals `P(q|p)`.
    pub bidirectional: bool,
    /// `τ(p) ≤ τ(q)`.
    pub inequality_holds: bool,
    /// `τ(p) = τ(q)`, checked only in the bidirectional case.
    pub equality_holds: Option<bool>,
}

impl<T: Scalar> TraceReport<T> {
    pub fn holds(&self) -> bool {
        self.inequality_holds && self.equality_holds != Some(false)
    }
}

/// Trace comparison for a pair with `P(q|p) ≠ 0`.
pub fn trace_monotonicity_check<T: Scalar>(p: &Projection<T>, q: &Projection<T>) -> Result<TraceReport<T>> {
    let fwd = transition_probability(p, q)?;
    let s = fwd.s.clone().ok_or_else(|| Error::Precondition("P(q|p) does not exist".into()))?;
    if close(&s, &T::zero(), EPS_TP) {
        return Err(Error::Precondition("P(q|p) must be nonzero".into()));
    }
    let back = transition_probability(q, p)?;
    let bidirectional = back.s.as_ref().is_some_and(|b| close(b, &s, EPS_TP));
    let (tp, tq) = (p.trace(), q.trace());
    let tol = T::tolerance(EPS_PROJ);
    Ok(TraceReport {
        inequality_holds: tp <= tq.clone() + tol,
        equality_holds: bidirectional.then(|| close(&tp, &tq, EPS_PROJ)),
        bidirectional,
        trace_p: tp,
        trace_q: tq,
    })
}
