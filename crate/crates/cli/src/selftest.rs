//! A quick invariant sweep across every module, for `qlogic selftest`.

use serde_json::{json, Value};

use qlogic::cloning::{cloning_identity_check, permutation_cloner, product_rule_check, TensorModel};
use qlogic::construct::{
    build_pair, composite_pair, octonion_example, random_projection_with, rng_from_seed, ConstructionSpec,
};
use qlogic::omp::{is_strong, matrix_sublogic, transition_probability_lp, FiniteOMP, StateSpace};
use qlogic::transition::{decompose, isoclinic_analysis, transition_oracle, transition_probability};
use qlogic::{Hypercomplex, KMatrix, Projection, Rational, Result, Ring, Scalar};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn family(ring: Ring, m: usize, n: usize, s: Rational) -> Result<(Projection<Rational>, Projection<Rational>)> {
    let u = KMatrix::from_fn(ring, m, n, |i, j| if i == j { Hypercomplex::one(ring) } else { Hypercomplex::zero(ring) });
    build_pair(&ConstructionSpec::new(ring, s, u))
}

fn family_exact() -> Result<bool> {
    for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
        let (p, q) = family(ring, 1, 2, r(1, 2))?;
        if transition_probability(&p, &q)?.s != Some(r(1, 2)) || transition_probability(&q, &p)?.s != Some(r(1, 2)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn oracle_agreement() -> Result<bool> {
    let mut rng = rng_from_seed(1);
    for k in 0..20 {
        let p = random_projection_with::<f64, _>(Ring::Complex, 4, 1 + k % 3, &mut rng)?;
        let q = random_projection_with::<f64, _>(Ring::Complex, 4, 1 + k % 2, &mut rng)?;
        let (a, o) = (transition_probability(&p, &q)?, transition_oracle(&p, &q)?);
        if a.exists != o.exists {
            return Ok(false);
        }
        if let (Some(x), Some(y)) = (a.s, o.s) {
            if (x - y).abs() > 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn boolean_dichotomy() -> Result<bool> {
    let l = FiniteOMP::from_blocks(&[vec!["a".into(), "b".into(), "c".into()]])?;
    let all = StateSpace::<Rational>::All;
    for p in 0..l.len() {
        if Some(p) == l.zero() {
            continue;
        }
        for q in 0..l.len() {
            let exists = transition_probability_lp(&l, &all, p, q)?.exists;
            if exists != (l.leq(p, q) || l.orthogonal(p, q)) {
                return Ok(false);
            }
        }
    }
    Ok(is_strong(&l, &all)?.strong)
}

fn sublogic_half() -> Result<bool> {
    let (a, b) = family(Ring::Real, 1, 1, r(1, 2))?;
    let named = vec![
        ("a".to_string(), a.clone()),
        ("a'".to_string(), a.orthocomplement()),
        ("b".to_string(), b.clone()),
        ("b'".to_string(), b.orthocomplement()),
    ];
    let h = |x: i64| Hypercomplex::real(Ring::Real, r(x, 1));
    let vecs: Vec<Vec<_>> = [(1, 0), (0, 1), (1, 1), (1, -1), (3, 4)].iter().map(|&(x, y)| vec![h(x), h(y)]).collect();
    let sl = matrix_sublogic(named, &vecs)?;
    let (ia, ib) = (sl.omp.element("a")?, sl.omp.element("b")?);
    let lp = transition_probability_lp(&sl.omp, &sl.states, ia, ib)?;
    Ok(lp.s == Some(r(1, 2)) && is_strong(&sl.omp, &sl.states)?.strong)
}

fn product_rule() -> Result<bool> {
    let model = TensorModel::new(2, 2)?;
    let (p1, q1) = family(Ring::Complex, 1, 1, r(1, 2))?;
    let (p2, q2) = family(Ring::Complex, 1, 1, r(1, 5))?;
    let rep = product_rule_check(&model, &p1, &q1, &p2, &q2)?;
    Ok(rep.holds && rep.composite == Some(r(1, 10)))
}

fn cloning_chain() -> Result<bool> {
    let model = TensorModel::new(2, 2)?;
    let e = |k: usize| {
        let d: Vec<Rational> = (0..2).map(|i| if i == k { r(1, 1) } else { r(0, 1) }).collect();
        Projection::from_matrix(KMatrix::diagonal(Ring::Complex, &d))
    };
    let (e0, e1) = (e(0)?, e(1)?);
    let rep = cloning_identity_check(&model, &e0, &e1, &e0, &permutation_cloner(2))?;
    Ok(rep.is_cloner && rep.chain_holds && rep.s == r(0, 1))
}

fn octonion_instance() -> Result<bool> {
    let o = |k: usize, c: Rational| Hypercomplex::unit(Ring::Octonion, k).scale(&c);
    let (p, q) = octonion_example(o(1, r(3, 5)), o(4, r(4, 5)), r(1, 2))?;
    Ok(transition_probability(&p, &q)?.s == Some(r(1, 2)) && transition_probability(&q, &p)?.s == Some(r(1, 2)))
}

fn decomposition() -> Result<bool> {
    let u = KMatrix::identity(Ring::Complex, 1);
    let inst = composite_pair(&ConstructionSpec::new(Ring::Complex, r(1, 5), u), 1, None)?;
    let dec = decompose(&inst.p, &inst.q)?;
    Ok(dec.holds() && dec.q_1.element() == inst.r.element() && dec.q_o.element() == inst.q_o.element())
}

fn symmetry() -> Result<bool> {
    let (p, q) = family(Ring::Real, 1, 1, r(9, 25))?;
    Ok(isoclinic_analysis(&p, &q)?.symmetry.is_some_and(|s| s.residual == 0.0))
}

type Check = (&'static str, fn() -> Result<bool>);

pub fn run() -> Value {
    let checks: [Check; 9] = [
        ("family_exact", family_exact),
        ("oracle_agreement", oracle_agreement),
        ("boolean_dichotomy", boolean_dichotomy),
        ("sublogic_half", sublogic_half),
        ("product_rule", product_rule),
        ("cloning_chain", cloning_chain),
        ("octonion_instance", octonion_instance),
        ("decomposition", decomposition),
        ("symmetry", symmetry),
    ];
    let mut all = true;
    let results: Vec<Value> = checks
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(b) => (b, Value::Null),
                Err(e) => (false, json!(e.to_string())),
            };
            all &= passed;
            json!({"name": name, "passed": passed, "detail": detail})
        })
        .collect();
    json!({"checks": results, "passed": all})
}
