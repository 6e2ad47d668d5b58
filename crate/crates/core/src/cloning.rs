//! Product rule and no-cloning in the tensor model `H_m(C) ⊗ H_n(C)`.
//!
//! The two copies of a factor sit inside `H_{mn}(C)` as `p ⊗ I` and
//! `I ⊗ q`. Candidate cloners are unitary conjugations `x ↦ U x U*`; this is
//! a restriction of the harness, since general logic morphisms of the
//! composite are out of computational reach. A failed search therefore
//! corroborates the no-cloning statement without re-proving it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::construct::rng_from_seed;
use crate::error::{Error, Result};
use crate::jordan::{AlgebraDescriptor, KMatrix};
use crate::logic::Projection;
use crate::scalar::Scalar;
use crate::tol::{close, negligible, EPS_PROJ};
use crate::transition::transition_probability;
use crate::{Hypercomplex, Ring};

/// Equalities along the proof chain may inherit the `EPS_PROJ` slack of the
/// cloning precondition, so they are compared one order looser.
const CHAIN_TOL: f64 = 1e-7;
/// Tolerance of the product rule.
const PRODUCT_TOL: f64 = 1e-9;
/// Stopping step of the coordinate descent.
const SEARCH_TOL: f64 = 1e-7;
const SEARCH_STEP: f64 = 0.5;
const SEARCH_RESTARTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorModel {
    pub m: usize,
    pub n: usize,
}

impl TensorModel {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Shape("tensor factors need positive size".into()));
        }
        Ok(Self { m, n })
    }

    pub fn composite(&self) -> AlgebraDescriptor {
        AlgebraDescriptor::single(Ring::Complex, self.m * self.n).expect("positive size")
    }

    fn check<T: Scalar>(p: &Projection<T>, size: usize, side: &str) -> Result<()> {
        let d = p.descriptor();
        match d.factors() {
            [f] if f.ring == Ring::Complex && f.n == size => Ok(()),
            _ => Err(Error::Shape(format!("{side} factor must be H_{size}(C)"))),
        }
    }

    /// `p ⊗ I_n`.
    pub fn bar<T: Scalar>(&self, p: &Projection<T>) -> Result<Projection<T>> {
        Self::check(p, self.m, "left")?;
        let id = KMatrix::identity(Ring::Complex, self.n);
        Projection::from_matrix(p.element().matrix().kron(&id)?)
    }

    /// `I_m ⊗ q`.
    pub fn tilde<T: Scalar>(&self, q: &Projection<T>) -> Result<Projection<T>> {
        Self::check(q, self.n, "right")?;
        let id = KMatrix::identity(Ring::Complex, self.m);
        Projection::from_matrix(id.kron(q.element().matrix())?)
    }

    /// `p ⊗ q` computed directly, for comparison with the lattice meet.
    pub fn product<T: Scalar>(&self, p: &Projection<T>, q: &Projection<T>) -> Result<Projection<T>> {
        Self::check(p, self.m, "left")?;
        Self::check(q, self.n, "right")?;
        Projection::from_matrix(p.element().matrix().kron(q.element().matrix())?)
    }

    /// `bar(p) ∧ tilde(q)` through the projection-logic meet.
    pub fn meet<T: Scalar>(&self, p: &Projection<T>, q: &Projection<T>) -> Result<Projection<T>> {
        self.bar(p)?.meet(&self.tilde(q)?)
    }

    /// Relative distance between `bar(p) ∧ tilde(q)` and `p ⊗ q`, plus
    /// whether the two embeddings commute.
    pub fn independence<T: Scalar>(&self, p: &Projection<T>, q: &Projection<T>) -> Result<IndependenceReport> {
        let (bp, tq) = (self.bar(p)?, self.tilde(q)?);
        let compatible = bp.is_compatible(&tq)?;
        let meet = bp.meet(&tq)?;
        let prod = self.product(p, q)?;
        let d = meet.element().sub(prod.element())?.norm2();
        let scale = prod.element().norm2();
        Ok(IndependenceReport {
            compatible,
            meet_residual: (d.to_f64() / scale.to_f64().max(1.0)).sqrt(),
            meet_matches: negligible(&d, &scale, EPS_PROJ),
            nonzero: !meet.is_zero(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceReport {
    pub compatible: bool,
    pub meet_residual: f64,
    pub meet_matches: bool,
    pub nonzero: bool,
}

/// A cloning candidate: the logic morphism `x ↦ U x U*` of the composite.
#[derive(Clone, Debug)]
pub struct UnitaryMorphism<T> {
    u: KMatrix<T>,
}

impl<T: Scalar> UnitaryMorphism<T> {
    pub fn new(u: KMatrix<T>) -> Result<Self> {
        if u.ring() != Ring::Complex || !u.is_square() {
            return Err(Error::Shape("cloning candidates are square complex matrices".into()));
        }
        let id = KMatrix::identity(Ring::Complex, u.rows());
        let d = u.mul(&u.adjoint())?.sub(&id)?.frobenius2();
        if !negligible(&d, &T::from_ratio(u.rows() as i64, 1), EPS_PROJ) {
            return Err(Error::Precondition(format!(
                "not unitary (residual {:.3e})",
                d.to_f64().sqrt()
            )));
        }
        Ok(Self { u })
    }

    pub fn identity(dim: usize) -> Self {
        Self { u: KMatrix::identity(Ring::Complex, dim) }
    }

    pub fn matrix(&self) -> &KMatrix<T> {
        &self.u
    }

    pub fn apply(&self, p: &Projection<T>) -> Result<Projection<T>> {
        p.conjugate_by(&[self.u.adjoint()])
    }
}

/// The "controlled shift" `|i, j⟩ ↦ |i, i + j mod n⟩` on `C^n ⊗ C^n`. It
/// clones the coordinate projections `e_i e_i*` onto the blank `e_0 e_0*`.
pub fn permutation_cloner<T: Scalar>(n: usize) -> UnitaryMorphism<T> {
    let d = n * n;
    let u = KMatrix::from_fn(Ring::Complex, d, d, |row, col| {
        let (i, j) = (col / n, col % n);
        if row == i * n + (i + j) % n {
            Hypercomplex::one(Ring::Complex)
        } else {
            Hypercomplex::zero(Ring::Complex)
        }
    });
    UnitaryMorphism { u }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductRuleReport<T> {
    pub s1: T,
    pub s2: T,
    /// `P(bar q1 ∧ tilde q2 | bar p1 ∧ tilde p2)`, `None` if it does not exist.
    pub composite: Option<T>,
    pub product: T,
    /// Both meets agree with the Kronecker products.
    pub meets_match: bool,
    pub holds: bool,
}

pub fn product_rule_check<T: Scalar>(
    model: &TensorModel,
    p1: &Projection<T>,
    q1: &Projection<T>,
    p2: &Projection<T>,
    q2: &Projection<T>,
) -> Result<ProductRuleReport<T>> {
    let require = |p: &Projection<T>, q: &Projection<T>, which: &str| -> Result<T> {
        transition_probability(p, q)?
            .s
            .ok_or_else(|| Error::Precondition(format!("P(q{which}|p{which}) does not exist")))
    };
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::Precondition("p1 ⊗ p2 must be nonzero".into()));
    }
    let s1 = require(p1, q1, "1")?;
    let s2 = require(p2, q2, "2")?;
    let big_p = model.meet(p1, p2)?;
    let big_q = model.meet(q1, q2)?;
    let meets_match = big_p.element().approx_eq(model.product(p1, p2)?.element(), EPS_PROJ)
        && big_q.element().approx_eq(model.product(q1, q2)?.element(), EPS_PROJ);
    let composite = transition_probability(&big_p, &big_q)?.s;
    let product = s1.clone() * s2.clone();
    let holds = meets_match && composite.as_ref().is_some_and(|c| close(c, &product, PRODUCT_TOL));
    Ok(ProductRuleReport { s1, s2, composite, product, meets_match, holds })
}

/// One step of the equality chain with the value it evaluates to.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep<T> {
    pub label: &'static str,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CloningChainReport<T> {
    /// `T(bar p_i ∧ tilde q_o) = bar p_i ∧ tilde p_i` for both `i`.
    pub is_cloner: bool,
    pub precondition_residual: f64,
    /// Empty when the candidate is not a cloner.
    pub chain: Vec<ChainStep<T>>,
    pub chain_holds: bool,
    /// `s = P(p_j|p_k)`; the chain forces `s² = s`.
    pub s: T,
    pub s_in_01: bool,
}

fn element_distance<T: Scalar>(a: &Projection<T>, b: &Projection<T>) -> Result<f64> {
    let d = a.element().sub(b.element())?.norm2();
    Ok((d.to_f64() / b.element().norm2().to_f64().max(1.0)).sqrt())
}

/// Evaluates every link of the chain
/// `P(p_j|p_k)² = … = P(p_j|p_k)` for a given cloning candidate.
pub fn cloning_identity_check<T: Scalar>(
    model: &TensorModel,
    p_j: &Projection<T>,
    p_k: &Projection<T>,
    q_o: &Projection<T>,
    cloner: &UnitaryMorphism<T>,
) -> Result<CloningChainReport<T>> {
    if model.m != model.n {
        return Err(Error::Precondition("cloning copies a factor into itself; need m = n".into()));
    }
    if p_j.is_zero() || p_k.is_zero() || q_o.is_zero() {
        return Err(Error::ZeroProjection);
    }
    let tp = |p: &Projection<T>, q: &Projection<T>, what: &str| -> Result<T> {
        transition_probability(p, q)?
            .s
            .ok_or_else(|| Error::Precondition(format!("{what} does not exist")))
    };
    let s = tp(p_k, p_j, "P(p_j|p_k)")?;
    tp(p_j, p_k, "P(p_k|p_j)")?;

    let blank_j = model.meet(p_j, q_o)?;
    let blank_k = model.meet(p_k, q_o)?;
    let copy_j = model.meet(p_j, p_j)?;
    let copy_k = model.meet(p_k, p_k)?;
    let t_j = cloner.apply(&blank_j)?;
    let t_k = cloner.apply(&blank_k)?;
    let residual = element_distance(&t_j, &copy_j)?.max(element_distance(&t_k, &copy_k)?);
    let exact_ok = |a: &Projection<T>, b: &Projection<T>| a.element().approx_eq(b.element(), EPS_PROJ);
    let is_cloner = exact_ok(&t_j, &copy_j) && exact_ok(&t_k, &copy_k);
    let s_in_01 = close(&s, &T::zero(), CHAIN_TOL) || close(&s, &T::one(), CHAIN_TOL);
    if !is_cloner {
        return Ok(CloningChainReport {
            is_cloner,
            precondition_residual: residual,
            chain: Vec::new(),
            chain_holds: false,
            s,
            s_in_01,
        });
    }

    let (bj, bk) = (model.bar(p_j)?, model.bar(p_k)?);
    let (tj, tk) = (model.tilde(p_j)?, model.tilde(p_k)?);
    let tq = model.tilde(q_o)?;
    let bar_s = tp(&bk, &bj, "P(bar p_j|bar p_k)")?;
    let steps = vec![
        ChainStep { label: "P(p_j|p_k)^2", value: s.clone() * s.clone() },
        ChainStep {
            label: "P(bar p_j|bar p_k) P(tilde p_j|tilde p_k)",
            value: bar_s.clone() * tp(&tk, &tj, "P(tilde p_j|tilde p_k)")?,
        },
        ChainStep {
            label: "P(bar p_j ∧ tilde p_j | bar p_k ∧ tilde p_k)",
            value: tp(&copy_k, &copy_j, "P(copy_j|copy_k)")?,
        },
        ChainStep {
            label: "P(T(bar p_j ∧ tilde q_o) | T(bar p_k ∧ tilde q_o))",
            value: tp(&t_k, &t_j, "P(T blank_j|T blank_k)")?,
        },
        ChainStep {
            label: "P(bar p_j ∧ tilde q_o | bar p_k ∧ tilde q_o)",
            value: tp(&blank_k, &blank_j, "P(blank_j|blank_k)")?,
        },
        ChainStep {
            label: "P(bar p_j|bar p_k) P(tilde q_o|tilde q_o)",
            value: bar_s.clone() * tp(&tq, &tq, "P(tilde q_o|tilde q_o)")?,
        },
        ChainStep { label: "P(bar p_j|bar p_k)", value: bar_s },
        ChainStep { label: "P(p_j|p_k)", value: s.clone() },
    ];
    let chain_holds = steps.windows(2).all(|w| close(&w[0].value, &w[1].value, CHAIN_TOL));
    Ok(CloningChainReport { is_cloner, precondition_residual: residual, chain: steps, chain_holds, s, s_in_01 })
}

// ---------------------------------------------------------------------------
// Falsification search over the unitary group, in plain f64.

type CMat = DMatrix<Complex64>;

fn to_cmat(x: &KMatrix<f64>) -> CMat {
    CMat::from_fn(x.rows(), x.cols(), |i, j| {
        let c = x.get(i, j).coords();
        Complex64::new(c[0], c[1])
    })
}

fn from_cmat(x: &CMat) -> KMatrix<f64> {
    KMatrix::from_fn(Ring::Complex, x.nrows(), x.ncols(), |i, j| {
        Hypercomplex::new(Ring::Complex, vec![x[(i, j)].re, x[(i, j)].im]).expect("complex pair")
    })
}

/// Root-sum-square Frobenius residual of `U X_i U* = Y_i` over the family.
fn cloning_residual(u: &CMat, targets: &[(CMat, CMat)]) -> f64 {
    let ua = u.adjoint();
    targets
        .iter()
        .map(|(x, y)| (u * x * &ua - y).norm_squared())
        .sum::<f64>()
        .sqrt()
}

fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // Fixing the phases of diag(R) makes the distribution exactly Haar.
    let phases = CMat::from_fn(d, d, |i, j| {
        if i != j {
            Complex64::new(0.0, 0.0)
        } else {
            let x = r[(i, i)];
            if x.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                x / x.norm()
            }
        }
    });
    q * phases
}

fn permutation_matrix(perm: &[usize]) -> CMat {
    let d = perm.len();
    CMat::from_fn(d, d, |i, j| {
        if perm[j] == i {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..d).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

#[derive(Clone, Copy, Debug)]
enum Generator {
    /// Rotation in the `(a, b)` plane with phase `φ ∈ {0, π/2}`.
    Givens(usize, usize, bool),
    Phase(usize),
}

fn apply_generator(u: &CMat, g: Generator, t: f64) -> CMat {
    let mut out = u.clone();
    match g {
        Generator::Givens(a, b, imaginary) => {
            let (c, s) = (t.cos(), t.sin());
            let e = if imaginary { Complex64::new(0.0, 1.0) } else { Complex64::new(1.0, 0.0) };
            for col in 0..u.ncols() {
                let (ua, ub) = (u[(a, col)], u[(b, col)]);
                out[(a, col)] = ua * c + e * ub * s;
                out[(b, col)] = -e.conj() * ua * s + ub * c;
            }
        }
        Generator::Phase(a) => {
            let ph = Complex64::from_polar(1.0, t);
            for col in 0..u.ncols() {
                out[(a, col)] *= ph;
            }
        }
    }
    out
}

/// Pattern search over one-parameter subgroups until the step drops below
/// `SEARCH_TOL`.
fn descend(mut u: CMat, targets: &[(CMat, CMat)]) -> (CMat, f64) {
    let d = u.nrows();
    let mut gens = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            gens.push(Generator::Givens(a, b, false));
            gens.push(Generator::Givens(a, b, true));
        }
        gens.push(Generator::Phase(a));
    }
    let mut best = cloning_residual(&u, targets);
    let mut step = SEARCH_STEP;
    while step >= SEARCH_TOL && best > 0.0 {
        let mut improved = false;
        for &g in &gens {
            for t in [step, -step] {
                let cand = apply_generator(&u, g, t);
                let r = cloning_residual(&cand, targets);
                if r < best {
                    u = cand;
                    best = r;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (u, best)
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub m: usize,
    pub n: usize,
    /// `P(p_2|p_1)`.
    pub s: f64,
    pub trials: usize,
    pub seed: u64,
    pub permutations: usize,
    pub restarts: usize,
    pub step: f64,
    pub tolerance: f64,
    pub best_random: f64,
    pub best_permutation: Option<f64>,
    pub best_residual: f64,
    /// Lower bound on the residual of any unitary conjugation, from the
    /// invariance of `tr(X_1 X_2)`.
    pub certified_floor: f64,
    pub best_unitary: KMatrix<f64>,
    pub verdict: String,
}

/// Samples `trials` Haar unitaries (and every permutation matrix when the
/// composite dimension is at most 8), then refines the best candidates by
/// coordinate descent. The search is restricted to unitary conjugations.
pub fn cloner_search(
    model: &TensorModel,
    p1: &Projection<f64>,
    p2: &Projection<f64>,
    q_o: &Projection<f64>,
    trials: usize,
    seed: u64,
) -> Result<SearchReport> {
    if model.m != model.n {
        return Err(Error::Precondition("cloning copies a factor into itself; need m = n".into()));
    }
    let s = transition_probability(p1, p2)?
        .s
        .ok_or_else(|| Error::Precondition("P(p_2|p_1) does not exist".into()))?;
    let mut targets = Vec::new();
    for p in [p1, p2] {
        let x = to_cmat(model.meet(p, q_o)?.element().matrix());
        let y = to_cmat(model.meet(p, p)?.element().matrix());
        targets.push((x, y));
    }
    let d = model.m * model.n;

    let inner = |a: &CMat, b: &CMat| (a.adjoint() * b).trace().re;
    let gap = (inner(&targets[0].0, &targets[1].0) - inner(&targets[0].1, &targets[1].1)).abs();
    let scale = targets[1].0.norm().max(targets[0].1.norm()).max(1e-300);
    let certified_floor = gap / (std::f64::consts::SQRT_2 * scale);

    let mut rng = rng_from_seed(seed);
    let mut pool: Vec<(f64, CMat)> = Vec::new();
    let keep = |pool: &mut Vec<(f64, CMat)>, r: f64, u: CMat| {
        pool.push((r, u));
        pool.sort_by(|a, b| a.0.total_cmp(&b.0));
        pool.truncate(SEARCH_RESTARTS);
    };
    let mut best_random = f64::INFINITY;
    for _ in 0..trials {
        let u = haar_unitary(d, &mut rng);
        let r = cloning_residual(&u, &targets);
        best_random = best_random.min(r);
        keep(&mut pool, r, u);
    }
    let (permutations, best_permutation) = if d <= 8 {
        let perms = all_permutations(d);
        let mut best = f64::INFINITY;
        for perm in &perms {
            let u = permutation_matrix(perm);
            let r = cloning_residual(&u, &targets);
            best = best.min(r);
            keep(&mut pool, r, u);
        }
        (perms.len(), Some(best))
    } else {
        (0, None)
    };

    let mut best_residual = f64::INFINITY;
    let mut best_u = CMat::identity(d, d);
    for (r0, u) in pool {
        let (u, r) = if r0 == 0.0 { (u, 0.0) } else { descend(u, &targets) };
        if r < best_residual {
            best_residual = r;
            best_u = u;
        }
    }
    let verdict = if best_residual <= SEARCH_TOL {
        "cloner found within the unitary-conjugation subclass".to_string()
    } else {
        format!(
            "no cloner found among unitary conjugations (best residual {best_residual:.3e}); \
             this corroborates, but does not prove, the absence of a cloning morphism"
        )
    };
    Ok(SearchReport {
        m: model.m,
        n: model.n,
        s,
        trials,
        seed,
        permutations,
        restarts: SEARCH_RESTARTS,
        step: SEARCH_STEP,
        tolerance: SEARCH_TOL,
        best_random,
        best_permutation,
        best_residual,
        certified_floor,
        best_unitary: from_cmat(&best_u),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_pair, ConstructionSpec};
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn basis_projection<T: Scalar>(n: usize, k: usize) -> Projection<T> {
        let diag: Vec<T> = (0..n).map(|i| if i == k { T::one() } else { T::zero() }).collect();
        Projection::from_matrix(KMatrix::diagonal(Ring::Complex, &diag)).unwrap()
    }

    fn family_pair<T: Scalar>(s: T) -> (Projection<T>, Projection<T>) {
        let u = KMatrix::identity(Ring::Complex, 1);
        build_pair(&ConstructionSpec::new(Ring::Complex, s, u)).unwrap()
    }

    #[test]
    fn embeddings_are_independent() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p, q) = family_pair(r(1, 2));
        let rep = model.independence(&p, &q).unwrap();
        assert!(rep.compatible && rep.meet_matches && rep.nonzero);
        assert_eq!(rep.meet_residual, 0.0);
    }

    #[test]
    fn product_rule_exact() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p1, q1) = family_pair(r(1, 2));
        // s = 1/5 keeps √(s(1−s)) = 2/5 rational.
        let (p2, q2) = family_pair(r(1, 5));
        let rep = product_rule_check(&model, &p1, &q1, &p2, &q2).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.composite, Some(r(1, 10)));

        let zero = basis_projection::<Rational>(2, 1);
        let rep = product_rule_check(&model, &p1, &basis_projection(2, 1), &p2, &q2).unwrap();
        assert_eq!(rep.s1, r(0, 1));
        assert_eq!(rep.composite, Some(r(0, 1)));
        let rep = product_rule_check(&model, &zero, &zero, &p2, &p2).unwrap();
        assert_eq!(rep.composite, Some(r(1, 1)));
    }

    #[test]
    fn product_rule_float_third() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p1, q1) = family_pair(0.5);
        let (p2, q2) = family_pair(1.0 / 3.0);
        let rep = product_rule_check(&model, &p1, &q1, &p2, &q2).unwrap();
        assert!(rep.holds);
        assert!((rep.composite.unwrap() - 1.0f64 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn product_rule_precondition() {
        let model = TensorModel::new(2, 2).unwrap();
        let zero = Projection::<f64>::from_matrix(KMatrix::zeros(Ring::Complex, 2, 2)).unwrap();
        let (p, q) = family_pair(0.5);
        assert!(matches!(product_rule_check(&model, &zero, &q, &p, &q), Err(Error::Precondition(_))));
    }

    #[test]
    fn permutation_cloner_on_orthogonal_pair() {
        let model = TensorModel::new(2, 2).unwrap();
        let (e0, e1) = (basis_projection::<Rational>(2, 0), basis_projection::<Rational>(2, 1));
        let cnot = permutation_cloner::<Rational>(2);
        let rep = cloning_identity_check(&model, &e0, &e1, &e0, &cnot).unwrap();
        assert!(rep.is_cloner && rep.chain_holds && rep.s_in_01);
        assert_eq!(rep.s, r(0, 1));
        assert_eq!(rep.chain.len(), 8);
        assert_eq!(rep.precondition_residual, 0.0);
    }

    #[test]
    fn identity_clones_a_single_projection() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p, _) = family_pair(r(1, 2));
        let rep = cloning_identity_check(&model, &p, &p, &p, &UnitaryMorphism::identity(4)).unwrap();
        assert!(rep.is_cloner && rep.chain_holds);
        assert_eq!(rep.s, r(1, 1));
    }

    #[test]
    fn non_orthogonal_pair_rejects_candidates() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p, q) = family_pair(r(1, 2));
        let e0 = basis_projection::<Rational>(2, 0);
        for u in [permutation_cloner::<Rational>(2), UnitaryMorphism::identity(4)] {
            let rep = cloning_identity_check(&model, &p, &q, &e0, &u).unwrap();
            assert!(!rep.is_cloner);
            assert!(rep.chain.is_empty());
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let m = KMatrix::<f64>::diagonal(Ring::Complex, &[1.0, 2.0]);
        assert!(matches!(UnitaryMorphism::new(m), Err(Error::Precondition(_))));
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = rng_from_seed(3);
        let u = haar_unitary(4, &mut rng);
        assert!((u.adjoint() * &u - CMat::identity(4, 4)).norm() < 1e-12);
        assert!(UnitaryMorphism::new(from_cmat(&u)).is_ok());
    }

    #[test]
    fn search_finds_orthogonal_cloner() {
        let model = TensorModel::new(2, 2).unwrap();
        let (e0, e1) = (basis_projection::<f64>(2, 0), basis_projection::<f64>(2, 1));
        let rep = cloner_search(&model, &e0, &e1, &e0, 10, 1).unwrap();
        assert_eq!(rep.best_residual, 0.0);
        assert_eq!(rep.permutations, 24);
        assert_eq!(rep.certified_floor, 0.0);
    }

    #[test]
    fn search_floor_for_half() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p, q) = family_pair(0.5);
        let e0 = basis_projection::<f64>(2, 0);
        let rep = cloner_search(&model, &p, &q, &e0, 200, 7).unwrap();
        assert!(rep.certified_floor > 0.17);
        assert!(rep.best_residual >= rep.certified_floor - 1e-12);
        let again = cloner_search(&model, &p, &q, &e0, 200, 7).unwrap();
        assert_eq!(rep.best_residual, again.best_residual);
    }

    #[test]
    fn trivial_search_for_equal_pair() {
        let model = TensorModel::new(2, 2).unwrap();
        let (p, _) = family_pair(0.5);
        let rep = cloner_search(&model, &p, &p, &p, 5, 0).unwrap();
        assert!(rep.best_residual <= 1e-12);
    }
}
