//! Randomised invariants across the crate, driven by proptest seeds.

mod common;

use proptest::prelude::*;
use qlogic::cloning::{product_rule_check, TensorModel};
use qlogic::construct::{
    build_pair, random_isometry_with, random_octonion_row_with, random_projection_with, random_unitary_with,
    rational_isometry_with, rational_unitary_with, rng_from_seed, ConstructionSpec,
};
use qlogic::omp::{is_strong, transition_probability_lp, FiniteOMP, StateSpace};
use qlogic::transition::{classify_pair, transition_oracle, transition_probability, PairCase};
use qlogic::{Hypercomplex, JordanElement, KMatrix, Projection, Projection64, Rational, Ring, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const TOL: f64 = 1e-9;
const RINGS: [Ring; 4] = [Ring::Real, Ring::Complex, Ring::Quaternion, Ring::Octonion];
const ASSOC: [Ring; 3] = [Ring::Real, Ring::Complex, Ring::Quaternion];

fn gauss(ring: Ring, rng: &mut ChaCha8Rng) -> Hypercomplex<f64> {
    Hypercomplex::new(ring, (0..ring.dim()).map(|_| rng.sample(StandardNormal)).collect()).unwrap()
}

fn rel_err(a: &Hypercomplex<f64>, b: &Hypercomplex<f64>, scale: f64) -> f64 {
    (a - b).norm2().sqrt() / scale
}

/// A random Hermitian element of `H_n(K)`.
fn hermitian(ring: Ring, n: usize, rng: &mut ChaCha8Rng) -> JordanElement<f64> {
    let m = KMatrix::from_fn(ring, n, n, |_, _| gauss(ring, rng));
    JordanElement::from_matrix(m.add(&m.adjoint()).unwrap().scale(&0.5)).unwrap()
}

fn close_elements(a: &JordanElement<f64>, b: &JordanElement<f64>, scale: f64) -> bool {
    a.sub(b).unwrap().norm2().sqrt() <= TOL * scale.max(1.0)
}

/// `p` the span of the first `k` columns of a random unitary and `q` that
/// of the first `j ≥ k`, so `p ≤ q`.
fn nested(ring: Ring, n: usize, k: usize, j: usize, rng: &mut ChaCha8Rng) -> (Projection64, Projection64) {
    let w = random_unitary_with::<f64, _>(ring, n, rng).unwrap();
    let cols = |r: usize| {
        let v = KMatrix::from_fn(ring, n, r, |a, b| w.get(a, b).clone());
        Projection::from_matrix(v.mul(&v.adjoint()).unwrap()).unwrap()
    };
    (cols(k), cols(j))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn composition_algebra_laws(seed in any::<u64>(), r in 0usize..4) {
        let ring = RINGS[r];
        let mut rng = rng_from_seed(seed);
        let (x, y) = (gauss(ring, &mut rng), gauss(ring, &mut rng));
        let (nx, ny) = (x.norm2(), y.norm2());
        let xy = &x * &y;
        prop_assert!((xy.norm2() - nx * ny).abs() <= 1e-12 * nx * ny);
        let scale = nx * ny.sqrt();
        // Alternative and flexible laws hold in all four rings.
        prop_assert!(rel_err(&(&(&x * &x) * &y), &(&x * &(&x * &y)), scale) <= 1e-12);
        prop_assert!(rel_err(&(&(&y * &x) * &x), &(&y * &(&x * &x)), scale) <= 1e-12);
        prop_assert!(rel_err(&(&xy * &x), &(&x * &(&y * &x)), scale) <= 1e-12);
        let inv = x.inverse().unwrap();
        prop_assert!(rel_err(&(&x * &inv), &Hypercomplex::one(ring), 1.0) <= 1e-12);
        prop_assert!(rel_err(&xy.conj(), &(&y.conj() * &x.conj()), nx.sqrt() * ny.sqrt()) <= 1e-12);
    }

    #[test]
    fn associator_vanishes_exactly_off_the_octonions(seed in any::<u64>(), r in 0usize..3) {
        let ring = ASSOC[r];
        let mut rng = rng_from_seed(seed);
        let mut small = || {
            let c = (0..ring.dim()).map(|_| Rational::from_ratio(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
            Hypercomplex::new(ring, c).unwrap()
        };
        let (x, y, z) = (small(), small(), small());
        prop_assert!(Hypercomplex::associator(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn jordan_identity_and_commutativity(seed in any::<u64>(), r in 0usize..4, n in 1usize..4) {
        let ring = RINGS[r];
        let mut rng = rng_from_seed(seed);
        let (x, y) = (hermitian(ring, n, &mut rng), hermitian(ring, n, &mut rng));
        let scale = x.norm2() * y.norm2().sqrt();
        prop_assert!(close_elements(&x.jordan(&y).unwrap(), &y.jordan(&x).unwrap(), scale));
        let x2 = x.square();
        let lhs = x.jordan(&y).unwrap().jordan(&x2).unwrap();
        let rhs = x.jordan(&y.jordan(&x2).unwrap()).unwrap();
        prop_assert!(close_elements(&lhs, &rhs, x.norm2() * scale));
        // {y, a², y} is positive, so its trace is non-negative.
        let t = JordanElement::triple(&y, &x2, &y).unwrap().trace();
        prop_assert!(t >= -TOL * x2.norm2() * y.norm2());
    }

    #[test]
    fn orthomodular_law(seed in any::<u64>(), r in 0usize..3, n in 2usize..5) {
        let ring = ASSOC[r];
        let mut rng = rng_from_seed(seed);
        let k = rng.random_range(1..n);
        let j = rng.random_range(k..=n);
        let (p, q) = nested(ring, n, k, j, &mut rng);
        prop_assert!(p.leq(&q).unwrap());
        let rest = q.meet(&p.orthocomplement()).unwrap();
        prop_assert!(p.is_orthogonal(&rest).unwrap());
        let back = p.orthogonal_join(&rest).unwrap();
        prop_assert!(back.element().approx_eq(q.element(), TOL));
        prop_assert_eq!(rest.rank(), j - k);
    }

    #[test]
    fn compatible_pairs_split(seed in any::<u64>(), r in 0usize..3, n in 2usize..5) {
        // p and q diagonal in one frame commute, so p = p∧q + p∧q'.
        let ring = ASSOC[r];
        let mut rng = rng_from_seed(seed);
        let w = random_unitary_with::<f64, _>(ring, n, &mut rng).unwrap();
        let pick = |rng: &mut ChaCha8Rng| {
            let d: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { 0.0 }).collect();
            Projection::from_matrix(KMatrix::diagonal(ring, &d)).unwrap().conjugate_by(std::slice::from_ref(&w)).unwrap()
        };
        let (p, q) = (pick(&mut rng), pick(&mut rng));
        prop_assume!(!p.is_zero());
        prop_assert!(p.is_compatible(&q).unwrap());
        let a = p.meet(&q).unwrap();
        let b = p.meet(&q.orthocomplement()).unwrap();
        prop_assert!(a.element().add(b.element()).unwrap().approx_eq(p.element(), TOL));
        // The compatible dichotomy: a value exists iff p ≤ q or p ⊥ q.
        let tp = transition_probability(&p, &q).unwrap();
        prop_assert_eq!(tp.exists, p.leq(&q).unwrap() || p.is_orthogonal(&q).unwrap());
        if let Some(s) = tp.s {
            prop_assert!(s.abs() < TOL || (s - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn atoms_give_symmetric_values(seed in any::<u64>(), r in 0usize..3, n in 2usize..6) {
        let ring = ASSOC[r];
        let mut rng = rng_from_seed(seed);
        let p = random_projection_with::<f64, _>(ring, n, 1, &mut rng).unwrap();
        let q = random_projection_with::<f64, _>(ring, n, 1, &mut rng).unwrap();
        prop_assert!(p.is_atom().unwrap());
        let (a, b) = (transition_probability(&p, &q).unwrap(), transition_probability(&q, &p).unwrap());
        let (a, b) = (a.s.unwrap(), b.s.unwrap());
        prop_assert!((a - b).abs() <= TOL);
        let tr = p.element().inner(q.element()).unwrap();
        prop_assert!((a - tr).abs() <= TOL);
    }

    #[test]
    fn values_survive_conjugation(seed in any::<u64>(), r in 0usize..3, n in 2usize..5) {
        let ring = ASSOC[r];
        let mut rng = rng_from_seed(seed);
        let kp = rng.random_range(1..=n);
        let kq = rng.random_range(0..=n);
        let p = random_projection_with::<f64, _>(ring, n, kp, &mut rng).unwrap();
        let q = random_projection_with::<f64, _>(ring, n, kq, &mut rng).unwrap();
        let w = [random_unitary_with::<f64, _>(ring, n, &mut rng).unwrap()];
        let a = transition_probability(&p, &q).unwrap();
        let b = transition_probability(&p.conjugate_by(&w).unwrap(), &q.conjugate_by(&w).unwrap()).unwrap();
        prop_assert_eq!(a.exists, b.exists);
        if let (Some(x), Some(y)) = (a.s, b.s) {
            prop_assert!((x - y).abs() <= TOL);
        }
        let o = transition_oracle(&p, &q).unwrap();
        prop_assert_eq!(a.exists, o.exists);
    }

    #[test]
    fn exact_family_is_exact_and_isoclinic(seed in any::<u64>(), r in 0usize..3, m in 1usize..3, extra in 0usize..2, k in 0usize..6) {
        let ring = ASSOC[r];
        let s = [Rational::from_ratio(1, 10), Rational::from_ratio(1, 5), Rational::from_ratio(1, 2),
                 Rational::from_ratio(4, 5), Rational::from_ratio(9, 10), Rational::from_ratio(9, 25)][k].clone();
        let mut rng = rng_from_seed(seed);
        let u = rational_isometry_with::<Rational, _>(ring, m, m + extra, &mut rng).unwrap();
        let w = rational_unitary_with::<Rational, _>(ring, 2 * m + extra, &mut rng).unwrap();
        let (p, q) = build_pair(&ConstructionSpec::new(ring, s.clone(), u).with_conjugator(w)).unwrap();
        prop_assert_eq!(transition_probability(&p, &q).unwrap().s, Some(s.clone()));
        prop_assert_eq!(transition_probability(&q, &p).unwrap().s, Some(s));
        prop_assert_eq!(p.trace(), q.trace());
        let rep = classify_pair(&p, &q).unwrap();
        prop_assert_eq!(rep.case, PairCase::IsoclinicPlusOrthogonal);
        prop_assert_eq!(rep.dim, 3);
    }

    #[test]
    fn octonion_rows_give_exact_pairs(seed in any::<u64>(), k in 0usize..5) {
        let s = [Rational::from_ratio(1, 10), Rational::from_ratio(1, 5), Rational::from_ratio(1, 2),
                 Rational::from_ratio(4, 5), Rational::from_ratio(9, 10)][k].clone();
        let u = random_octonion_row_with::<Rational, _>(&mut rng_from_seed(seed));
        let (p, q) = build_pair(&ConstructionSpec::new(Ring::Octonion, s.clone(), u)).unwrap();
        prop_assert_eq!(transition_probability(&p, &q).unwrap().s, Some(s.clone()));
        prop_assert_eq!(transition_probability(&q, &p).unwrap().s, Some(s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn tensor_factors_are_independent(seed in any::<u64>(), a in 2usize..4, b in 2usize..4) {
        let model = TensorModel::new(a, b).unwrap();
        let mut rng = rng_from_seed(seed);
        let p = random_projection_with::<f64, _>(Ring::Complex, a, rng.random_range(1..=a), &mut rng).unwrap();
        let q = random_projection_with::<f64, _>(Ring::Complex, b, rng.random_range(1..=b), &mut rng).unwrap();
        let rep = model.independence(&p, &q).unwrap();
        prop_assert!(rep.compatible && rep.meet_matches && rep.nonzero);
        prop_assert!(rep.meet_residual <= TOL);
    }

    #[test]
    fn product_rule_on_random_pairs(seed in any::<u64>(), i in 0usize..5, j in 0usize..5) {
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        let (s1, s2) = (grid[i], grid[j]);
        let model = TensorModel::new(2, 2).unwrap();
        let mut rng = rng_from_seed(seed);
        let mut pair = |s: f64| {
            let u = random_isometry_with::<f64, _>(Ring::Complex, 1, 1, &mut rng).unwrap();
            build_pair(&ConstructionSpec::new(Ring::Complex, s, u)).unwrap()
        };
        let (p1, q1) = pair(s1);
        let (p2, q2) = pair(s2);
        let rep = product_rule_check(&model, &p1, &q1, &p2, &q2).unwrap();
        prop_assert!(rep.holds);
        prop_assert!((rep.composite.unwrap() - s1 * s2).abs() <= TOL);
    }
}

#[test]
fn octonions_are_not_associative() {
    let e = |k| Hypercomplex::<Rational>::unit(Ring::Octonion, k);
    let a = Hypercomplex::associator(&e(1), &e(2), &e(4)).unwrap();
    assert!(!a.is_zero());
    // The reference product from quaternion pairs agrees on the same triple.
    let coords = |x: &Hypercomplex<Rational>| x.coords().iter().map(|c| c.to_f64()).collect::<Vec<_>>();
    let ab = common::octonion_product(&coords(&e(1)), &coords(&e(2)));
    let lhs = common::octonion_product(&ab, &coords(&e(4)));
    let bc = common::octonion_product(&coords(&e(2)), &coords(&e(4)));
    let rhs = common::octonion_product(&coords(&e(1)), &bc);
    assert!(common::dist2(&lhs, &rhs) > 1.0);
}

#[test]
fn boolean_algebras_obey_the_dichotomy() {
    for atoms in 2..=4 {
        let names: Vec<String> = (0..atoms).map(|k| format!("x{k}")).collect();
        let l = FiniteOMP::from_blocks(&[names]).unwrap();
        assert!(l.validate().is_valid());
        let all = StateSpace::<Rational>::All;
        assert!(is_strong(&l, &all).unwrap().strong);
        for p in 0..l.len() {
            if Some(p) == l.zero() {
                continue;
            }
            for q in 0..l.len() {
                let tp = transition_probability_lp(&l, &all, p, q).unwrap();
                assert_eq!(tp.exists, l.leq(p, q) || l.orthogonal(p, q));
            }
        }
    }
}
