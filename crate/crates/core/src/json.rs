//! JSON encodings shared by the command-line tool and the fixtures.
//!
//! Ring elements are `{"ring": "C", "coords": [re, im]}` and Jordan
//! elements are `{"factors": [{"ring", "n"}], "blocks": [matrix, ...]}`,
//! where each matrix is a list of rows and each entry is either a bare real
//! number or a coordinate array. Scalars may be numbers or `"p/q"` strings.
//! Objects use sorted keys (the default `serde_json` map), so identical
//! inputs serialise byte-identically.

use serde_json::{json, Map, Value};

use crate::cloning::{CloningChainReport, IndependenceReport, ProductRuleReport, SearchReport};
use crate::error::{Error, Result};
use crate::jordan::{Factor, JordanElement, KMatrix};
use crate::logic::Projection;
use crate::omp::{matrix_sublogic, FiniteOMP, StateSpace, StrongReport, ValidationReport};
use crate::scalar::Scalar;
use crate::transition::{
    DecompositionReport, IsoclinicReport, StructureReport, TraceReport, TransitionResult,
};
use crate::{Hypercomplex, Ring};

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    Ring::from_tag(string(v, "ring")?)
}

pub fn hypercomplex_to_json<T: Scalar>(x: &Hypercomplex<T>) -> Value {
    json!({
        "ring": x.ring().tag(),
        "coords": x.coords().iter().map(Scalar::to_json).collect::<Vec<_>>(),
    })
}

pub fn hypercomplex_from_json<T: Scalar>(v: &Value) -> Result<Hypercomplex<T>> {
    let ring = ring_from_json(field(v, "ring")?)?;
    entry_from_json(ring, field(v, "coords")?)
}

fn entry_from_json<T: Scalar>(ring: Ring, v: &Value) -> Result<Hypercomplex<T>> {
    match v {
        Value::Array(items) => {
            let coords = items.iter().map(T::from_json).collect::<Result<Vec<_>>>()?;
            if coords.len() != ring.dim() {
                return Err(Error::Parse(format!(
                    "{} coordinates given for {}, expected {}",
                    coords.len(),
                    ring,
                    ring.dim()
                )));
            }
            Hypercomplex::new(ring, coords)
        }
        other => Ok(Hypercomplex::real(ring, T::from_json(other)?)),
    }
}

fn entry_to_json<T: Scalar>(x: &Hypercomplex<T>) -> Value {
    if x.ring() == Ring::Real {
        x.re().to_json()
    } else {
        Value::Array(x.coords().iter().map(Scalar::to_json).collect())
    }
}

pub fn matrix_to_json<T: Scalar>(m: &KMatrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| entry_to_json(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<T: Scalar>(ring: Ring, v: &Value) -> Result<KMatrix<T>> {
    let rows = array(v, "matrix")?;
    let r = rows.len();
    let mut data = Vec::new();
    let mut c = None;
    for row in rows {
        let row = array(row, "matrix row")?;
        if *c.get_or_insert(row.len()) != row.len() {
            return Err(Error::Parse("ragged matrix".into()));
        }
        for e in row {
            data.push(entry_from_json(ring, e)?);
        }
    }
    KMatrix::new(ring, r, c.unwrap_or(0), data)
}

pub fn element_to_json<T: Scalar>(x: &JordanElement<T>) -> Value {
    let factors: Vec<Value> = x
        .descriptor()
        .factors()
        .iter()
        .map(|f| json!({"ring": f.ring.tag(), "n": f.n}))
        .collect();
    json!({
        "factors": factors,
        "blocks": x.blocks().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn element_from_json<T: Scalar>(v: &Value) -> Result<JordanElement<T>> {
    let factors = array(field(v, "factors")?, "factors")?
        .iter()
        .map(|f| {
            let ring = ring_from_json(field(f, "ring")?)?;
            let n = field(f, "n")?.as_u64().ok_or_else(|| Error::Parse("factor size must be an integer".into()))?;
            Factor::new(ring, n as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    let blocks = array(field(v, "blocks")?, "blocks")?;
    if blocks.len() != factors.len() {
        return Err(Error::Parse("one block per factor is required".into()));
    }
    let blocks = blocks
        .iter()
        .zip(&factors)
        .map(|(b, f)| {
            let m = matrix_from_json::<T>(f.ring, b)?;
            if m.rows() != f.n || m.cols() != f.n {
                return Err(Error::Parse(format!("block is not {}x{}", f.n, f.n)));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    JordanElement::new(blocks)
}

pub fn projection_to_json<T: Scalar>(p: &Projection<T>) -> Value {
    let mut v = element_to_json(p.element());
    v["kind"] = json!("projection");
    v
}

pub fn projection_from_json<T: Scalar>(v: &Value) -> Result<Projection<T>> {
    Projection::new(element_from_json(v)?)
}

/// `{"p": …, "q": …}`; extra fields (as written by `gen`) are ignored.
pub fn pair_from_json<T: Scalar>(v: &Value) -> Result<(Projection<T>, Projection<T>)> {
    Ok((projection_from_json(field(v, "p")?)?, projection_from_json(field(v, "q")?)?))
}

fn opt<T: Scalar>(x: &Option<T>) -> Value {
    x.as_ref().map_or(Value::Null, Scalar::to_json)
}

pub fn transition_to_json<T: Scalar>(r: &TransitionResult<T>) -> Value {
    json!({"exists": r.exists, "s": opt(&r.s), "residual": r.residual.to_json()})
}

pub fn isoclinic_to_json<T: Scalar>(r: &IsoclinicReport<T>) -> Value {
    json!({
        "forward": transition_to_json(&r.forward),
        "backward": transition_to_json(&r.backward),
        "isoclinic": r.isoclinic,
        "symmetry": r.symmetry.as_ref().map_or(Value::Null, |s| json!({
            "v": element_to_json(&s.v),
            "residual": s.residual.to_json(),
        })),
    })
}

pub fn decomposition_to_json<T: Scalar>(r: &DecompositionReport<T>) -> Value {
    json!({
        "s": r.s.to_json(),
        "q_o": projection_to_json(&r.q_o),
        "q_1": projection_to_json(&r.q_1),
        "forward": transition_to_json(&r.forward),
        "backward": transition_to_json(&r.backward),
        "q1_orthogonal_to_p": r.q1_orthogonal_to_p,
        "q_o_leq_q": r.q_o_leq_q,
        "holds": r.holds(),
    })
}

pub fn structure_to_json<T: Scalar>(r: &StructureReport<T>) -> Value {
    json!({
        "case": r.case.tag(),
        "s": r.s.to_json(),
        "dim": r.dim,
        "basis": r.basis.iter().map(element_to_json).collect::<Vec<_>>(),
        "decomposition": r.decomposition.as_ref().map_or(Value::Null, decomposition_to_json),
        "witness": r.witness.as_ref().map_or(Value::Null, |w| json!({
            "dim": w.dim,
            "identity_residual": w.identity_residual.to_json(),
            "homomorphism_residual": w.homomorphism_residual.to_json(),
        })),
    })
}

pub fn trace_to_json<T: Scalar>(r: &TraceReport<T>) -> Value {
    json!({
        "trace_p": r.trace_p.to_json(),
        "trace_q": r.trace_q.to_json(),
        "bidirectional": r.bidirectional,
        "inequality_holds": r.inequality_holds,
        "equality_holds": r.equality_holds,
        "holds": r.holds(),
    })
}

pub fn independence_to_json(r: &IndependenceReport) -> Value {
    json!({
        "compatible": r.compatible,
        "meet_matches": r.meet_matches,
        "meet_residual": r.meet_residual.to_json(),
        "nonzero": r.nonzero,
    })
}

pub fn product_rule_to_json<T: Scalar>(r: &ProductRuleReport<T>) -> Value {
    json!({
        "s1": r.s1.to_json(),
        "s2": r.s2.to_json(),
        "composite": opt(&r.composite),
        "product": r.product.to_json(),
        "meets_match": r.meets_match,
        "holds": r.holds,
    })
}

pub fn chain_to_json<T: Scalar>(r: &CloningChainReport<T>) -> Value {
    json!({
        "is_cloner": r.is_cloner,
        "precondition_residual": r.precondition_residual.to_json(),
        "chain": r.chain.iter().map(|s| json!({"step": s.label, "value": s.value.to_json()})).collect::<Vec<_>>(),
        "chain_holds": r.chain_holds,
        "s": r.s.to_json(),
        "s_in_01": r.s_in_01,
    })
}

pub fn search_to_json(r: &SearchReport) -> Value {
    json!({
        "m": r.m,
        "n": r.n,
        "s": r.s.to_json(),
        "trials": r.trials,
        "seed": r.seed,
        "permutations": r.permutations,
        "restarts": r.restarts,
        "step": r.step.to_json(),
        "tolerance": r.tolerance.to_json(),
        "best_random": r.best_random.to_json(),
        "best_permutation": r.best_permutation.map_or(Value::Null, |x| x.to_json()),
        "best_residual": r.best_residual.to_json(),
        "certified_floor": r.certified_floor.to_json(),
        "verdict": r.verdict,
    })
}

pub fn validation_to_json(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "elements": r.elements,
        "violation": r.violation.as_ref().map_or(Value::Null, |v| json!({"axiom": v.axiom, "detail": v.detail})),
    })
}

pub fn strong_to_json(r: &StrongReport) -> Value {
    json!({
        "strong": r.strong,
        "pairs_checked": r.pairs_checked,
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |(q, p)| json!([q, p])),
    })
}

pub fn error_to_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}

/// A finite logic with the state set computations should range over.
#[derive(Clone, Debug)]
pub struct OmpInput<T> {
    pub omp: FiniteOMP,
    pub states: StateSpace<T>,
    /// Present for sublogics of a matrix algebra, indexed like `omp`.
    pub projections: Option<Vec<Projection<T>>>,
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?.iter().map(|x| string(x, what).map(str::to_owned)).collect()
}

fn tuples(v: Option<&Value>, arity: usize, what: &str) -> Result<Vec<Vec<String>>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    array(v, what)?
        .iter()
        .map(|t| {
            let t = strings(t, what)?;
            if t.len() != arity {
                return Err(Error::Parse(format!("{what} entries have {arity} names")));
            }
            Ok(t)
        })
        .collect()
}

/// Value of a state at element `name`: listed directly, or the sum over the
/// atoms of a block element `a+b+…`; `0` and `1` are implied.
fn state_value<T: Scalar>(map: &Map<String, Value>, name: &str) -> Result<T> {
    if let Some(v) = map.get(name) {
        return T::from_json(v);
    }
    match name {
        "0" => return Ok(T::zero()),
        "1" => return Ok(T::one()),
        _ => {}
    }
    let mut acc = T::zero();
    for atom in name.split('+') {
        let v = map
            .get(atom)
            .ok_or_else(|| Error::Parse(format!("state has no value for {name:?}")))?;
        acc = acc + T::from_json(v)?;
    }
    Ok(acc)
}

/// Three forms are accepted: `{"blocks": [[atoms…], …]}`, the explicit
/// `{"elements", "order", "orthocomplement", "joins"}`, and
/// `{"sublogic": {"projections": {name: element}, "vectors": [[entry…]…]}}`.
/// The first two take optional `"states"`, a list of `{element: value}`
/// maps; without it every state is admitted.
pub fn omp_from_json<T: Scalar>(v: &Value) -> Result<OmpInput<T>> {
    if let Some(sub) = v.get("sublogic") {
        let named = field(sub, "projections")?
            .as_object()
            .ok_or_else(|| Error::Parse("projections must be an object".into()))?
            .iter()
            .map(|(k, x)| Ok((k.clone(), projection_from_json::<T>(x)?)))
            .collect::<Result<Vec<_>>>()?;
        let ring = named
            .first()
            .map(|(_, p)| p.descriptor().factors()[0].ring)
            .ok_or_else(|| Error::Parse("no projections given".into()))?;
        let vectors = match sub.get("vectors") {
            None => Vec::new(),
            Some(vs) => array(vs, "vectors")?
                .iter()
                .map(|xi| array(xi, "vector")?.iter().map(|e| entry_from_json(ring, e)).collect())
                .collect::<Result<Vec<_>>>()?,
        };
        let sub = matrix_sublogic(named, &vectors)?;
        return Ok(OmpInput { omp: sub.omp, states: sub.states, projections: Some(sub.projections) });
    }
    let omp = if let Some(blocks) = v.get("blocks") {
        let blocks = array(blocks, "blocks")?.iter().map(|b| strings(b, "block")).collect::<Result<Vec<_>>>()?;
        FiniteOMP::from_blocks(&blocks)?
    } else {
        let elements = strings(field(v, "elements")?, "elements")?;
        let pairs = |key: &str| -> Result<Vec<(String, String)>> {
            Ok(tuples(v.get(key), 2, key)?.into_iter().map(|t| (t[0].clone(), t[1].clone())).collect())
        };
        let joins: Vec<(String, String, String)> = tuples(v.get("joins"), 3, "joins")?
            .into_iter()
            .map(|t| (t[0].clone(), t[1].clone(), t[2].clone()))
            .collect();
        FiniteOMP::from_raw(elements, &pairs("order")?, &pairs("orthocomplement")?, &joins)?
    };
    let states = match v.get("states") {
        None => StateSpace::All,
        Some(list) => StateSpace::Hull(
            array(list, "states")?
                .iter()
                .map(|s| {
                    let map = s.as_object().ok_or_else(|| Error::Parse("a state is an object".into()))?;
                    omp.names().iter().map(|n| state_value::<T>(map, n)).collect()
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(OmpInput { omp, states, projections: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn element_round_trip() {
        let v = json!({
            "factors": [{"ring": "C", "n": 2}],
            "blocks": [[[1, [0, "1/2"]], [[0, "-1/2"], 0]]],
        });
        let x = element_from_json::<Rational>(&v).unwrap();
        let back = element_to_json(&x);
        let again = element_from_json::<Rational>(&back).unwrap();
        assert_eq!(x, again);
        assert_eq!(back["blocks"][0][0][1], json!(["0", "1/2"]));
    }

    #[test]
    fn real_entries_are_bare_numbers() {
        let v = json!({"factors": [{"ring": "R", "n": 2}], "blocks": [[[0.5, 0.5], [0.5, 0.5]]]});
        let p = projection_from_json::<f64>(&v).unwrap();
        assert_eq!(projection_to_json(&p)["blocks"][0][0][0], json!(0.5));
        assert_eq!(projection_to_json(&p)["kind"], json!("projection"));
    }

    #[test]
    fn malformed_inputs() {
        let bad = json!({"factors": [{"ring": "C", "n": 2}], "blocks": [[[1, 0], [0]]]});
        assert!(matches!(element_from_json::<f64>(&bad), Err(Error::Parse(_))));
        let bad = json!({"factors": [{"ring": "Z", "n": 1}], "blocks": [[[1]]]});
        assert!(matches!(element_from_json::<f64>(&bad), Err(Error::Parse(_))));
        let not_proj = json!({"factors": [{"ring": "R", "n": 1}], "blocks": [[[2]]]});
        assert!(matches!(projection_from_json::<f64>(&not_proj), Err(Error::NotProjection(_))));
    }

    #[test]
    fn hypercomplex_round_trip() {
        let x = Hypercomplex::<Rational>::unit(Ring::Octonion, 3);
        assert_eq!(hypercomplex_from_json::<Rational>(&hypercomplex_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn block_logic_with_atom_states() {
        let v = json!({
            "blocks": [["a", "b", "c"]],
            "states": [{"a": "1/2", "b": "1/2", "c": 0}],
        });
        let input = omp_from_json::<Rational>(&v).unwrap();
        assert_eq!(input.omp.len(), 8);
        let StateSpace::Hull(states) = &input.states else { panic!("hull expected") };
        let ab = input.omp.element("a+b").unwrap();
        assert_eq!(states[0][ab], Rational::from_ratio(1, 1));
    }

    #[test]
    fn raw_logic() {
        let v = json!({
            "elements": ["0", "x", "y", "1"],
            "order": [["0", "x"], ["0", "y"], ["x", "1"], ["y", "1"]],
            "orthocomplement": [["0", "1"], ["1", "0"], ["x", "y"], ["y", "x"]],
            "joins": [["x", "y", "1"]],
        });
        let input = omp_from_json::<f64>(&v).unwrap();
        assert!(input.omp.validate().is_valid());
        assert_eq!(input.states, StateSpace::All);
    }

    #[test]
    fn scalar_rendering_is_stable() {
        let r = TransitionResult { exists: true, s: Some(1.0 / 3.0), residual: 0.0 };
        assert_eq!(transition_to_json(&r).to_string(), r#"{"exists":true,"residual":0,"s":0.333333333333}"#);
        let e = error_to_json(&Error::ZeroProjection);
        assert_eq!(e["error"]["kind"], json!("zero_projection"));
    }
}
