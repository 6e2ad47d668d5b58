use crate::error::{Error, Result};
use crate::omp::poset::FiniteOMP;
use crate::omp::simplex::{maximize, minimize, LinearProgram, LpOutcome};
use crate::scalar::Scalar;
use crate::tol::{close, EPS_LP};
use crate::transition::TransitionResult;

/// The state set a computation ranges over.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpace<T> {
    /// Every state: the polytope `μ(I) = 1`, `μ ≥ 0`, `μ(p + q) = μ(p) + μ(q)`.
    /// The bound `μ ≤ 1` follows from `μ(p) + μ(p') = 1`.
    All,
    /// Convex hull of explicitly listed states, each indexed by element.
    Hull(Vec<Vec<T>>),
}

/// `μ(I) = 1`, `0 ≤ μ ≤ 1` and additivity on every declared join.
pub fn is_state<T: Scalar>(omp: &FiniteOMP, mu: &[T]) -> bool {
    if mu.len() != omp.len() {
        return false;
    }
    let tol = T::tolerance(EPS_LP);
    let Some(one) = omp.one() else { return false };
    close(&mu[one], &T::one(), EPS_LP)
        && mu.iter().all(|x| *x >= -tol.clone() && *x <= T::one() + tol.clone())
        && omp
            .orthogonal_joins()
            .iter()
            .all(|&(a, b, j)| close(&mu[j], &(mu[a].clone() + mu[b].clone()), EPS_LP))
}

/// Linear description of a state set: variables, equality rows, and the
/// linear map from variables to `μ(x)`.
struct StateModel<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    /// `μ(x) = Σ_v eval[x][v] · var_v`.
    eval: Vec<Vec<T>>,
}

impl<T: Scalar> StateModel<T> {
    fn new(omp: &FiniteOMP, space: &StateSpace<T>) -> Result<Self> {
        let n = omp.len();
        match space {
            StateSpace::All => {
                let one = omp.one().ok_or_else(|| Error::Precondition("logic has no unit".into()))?;
                let unit = |k: usize| (0..n).map(|v| if v == k { T::one() } else { T::zero() }).collect::<Vec<T>>();
                let mut rows = vec![unit(one)];
                let mut rhs = vec![T::one()];
                for (a, b, j) in omp.orthogonal_joins() {
                    let mut row = vec![T::zero(); n];
                    row[j] = row[j].clone() + T::one();
                    row[a] = row[a].clone() - T::one();
                    row[b] = row[b].clone() - T::one();
                    rows.push(row);
                    rhs.push(T::zero());
                }
                if let Some(z) = omp.zero() {
                    rows.push(unit(z));
                    rhs.push(T::zero());
                }
                Ok(Self { rows, rhs, eval: (0..n).map(unit).collect() })
            }
            StateSpace::Hull(states) => {
                if states.is_empty() {
                    return Err(Error::Infeasible("empty state list".into()));
                }
                if let Some(bad) = states.iter().position(|s| !is_state(omp, s)) {
                    return Err(Error::Precondition(format!("listed state #{bad} is not a state")));
                }
                let k = states.len();
                let eval = (0..n).map(|x| states.iter().map(|s| s[x].clone()).collect()).collect();
                Ok(Self { rows: vec![vec![T::one(); k]], rhs: vec![T::one()], eval })
            }
        }
    }

    fn with_value(&self, x: usize, value: T) -> (Vec<Vec<T>>, Vec<T>) {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        rows.push(self.eval[x].clone());
        rhs.push(value);
        (rows, rhs)
    }

    fn program(&self, rows: Vec<Vec<T>>, rhs: Vec<T>, objective: usize) -> LinearProgram<T> {
        LinearProgram { a: rows, b: rhs, c: self.eval[objective].clone() }
    }
}

/// `P(q|p)` over a state set: the range of `μ(q)` among states with
/// `μ(p) = 1`, found by two linear programs.
pub fn transition_probability_lp<T: Scalar>(
    omp: &FiniteOMP,
    space: &StateSpace<T>,
    p: usize,
    q: usize,
) -> Result<TransitionResult<T>> {
    if Some(p) == omp.zero() {
        return Err(Error::ZeroProjection);
    }
    let model = StateModel::new(omp, space)?;
    let (rows, rhs) = model.with_value(p, T::one());
    let lp = model.program(rows, rhs, q);
    let (lo, hi) = match (minimize(&lp), maximize(&lp)) {
        (LpOutcome::Optimal { value: lo, .. }, LpOutcome::Optimal { value: hi, .. }) => (lo, hi),
        (LpOutcome::Infeasible, _) | (_, LpOutcome::Infeasible) => {
            return Err(Error::Infeasible(format!("no state gives {} probability 1", omp.name(p))));
        }
        _ => return Err(Error::Infeasible("state program is unbounded".into())),
    };
    let gap = hi.clone() - lo.clone();
    let exists = gap <= T::tolerance(EPS_LP);
    let mid = (lo + hi) * T::half();
    Ok(TransitionResult { exists, s: exists.then(|| mid.clamp_unit()), residual: gap.to_f64() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReport {
    pub strong: bool,
    /// First pair `(q, p)` with `q ≰ p` lacking a separating state.
    pub counterexample: Option<(String, String)>,
    pub pairs_checked: usize,
}

/// The state set is strong when every `q ≰ p` has a state with `μ(q) = 1`
/// and `μ(p) < 1`.
pub fn is_strong<T: Scalar>(omp: &FiniteOMP, space: &StateSpace<T>) -> Result<StrongReport> {
    let model = StateModel::new(omp, space)?;
    let mut checked = 0;
    for q in 0..omp.len() {
        let (rows, rhs) = model.with_value(q, T::one());
        for p in 0..omp.len() {
            if omp.leq(q, p) {
                continue;
            }
            checked += 1;
            let lp = model.program(rows.clone(), rhs.clone(), p);
            let separated = match minimize(&lp) {
                LpOutcome::Optimal { value, .. } => value < T::one() - T::tolerance(EPS_LP),
                _ => false,
            };
            if !separated {
                return Ok(StrongReport {
                    strong: false,
                    counterexample: Some((omp.name(q).into(), omp.name(p).into())),
                    pairs_checked: checked,
                });
            }
        }
    }
    Ok(StrongReport { strong: true, counterexample: None, pairs_checked: checked })
}

/// Whether `mu` lies in the state set.
pub fn contains_state<T: Scalar>(omp: &FiniteOMP, space: &StateSpace<T>, mu: &[T]) -> Result<bool> {
    if !is_state(omp, mu) {
        return Ok(false);
    }
    match space {
        StateSpace::All => Ok(true),
        StateSpace::Hull(states) => {
            let k = states.len();
            let mut a: Vec<Vec<T>> = (0..omp.len()).map(|x| states.iter().map(|s| s[x].clone()).collect()).collect();
            let mut b: Vec<T> = mu.to_vec();
            a.push(vec![T::one(); k]);
            b.push(T::one());
            let lp = LinearProgram { a, b, c: vec![T::zero(); k] };
            Ok(!matches!(minimize(&lp), LpOutcome::Infeasible))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// `π(I) = I`.
    pub unit: bool,
    /// Orthogonality and orthogonal joins preserved.
    pub joins: bool,
    /// Every supplied target state pulls back into the source state set.
    pub pullback: bool,
    pub detail: Option<String>,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.unit && self.joins && self.pullback
    }
}

/// Checks a map `π: source → target` against the morphism conditions.
pub fn check_morphism<T: Scalar>(
    source: &FiniteOMP,
    target: &FiniteOMP,
    map: &[usize],
    source_states: &StateSpace<T>,
    target_states: &[Vec<T>],
) -> Result<MorphismReport> {
    if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
        return Err(Error::Shape("map must send every source element into the target".into()));
    }
    let mut detail = None;
    let unit = match (source.one(), target.one()) {
        (Some(a), Some(b)) => map[a] == b,
        _ => false,
    };
    if !unit {
        detail = Some("π(I) ≠ I".to_string());
    }
    let mut joins = true;
    'outer: for p in 0..source.len() {
        for q in 0..source.len() {
            if !source.orthogonal(p, q) {
                continue;
            }
            let (pp, pq) = (map[p], map[q]);
            if !target.orthogonal(pp, pq) {
                joins = false;
                detail.get_or_insert(format!("{} ⊥ {} is not preserved", source.name(p), source.name(q)));
                break 'outer;
            }
            if let Some(j) = source.join(p, q) {
                if target.join(pp, pq) != Some(map[j]) {
                    joins = false;
                    detail.get_or_insert(format!("join of {} and {} is not preserved", source.name(p), source.name(q)));
                    break 'outer;
                }
            }
        }
    }
    let mut pullback = true;
    for (k, nu) in target_states.iter().enumerate() {
        let mu: Vec<T> = map.iter().map(|&x| nu[x].clone()).collect();
        if !contains_state(source, source_states, &mu)? {
            pullback = false;
            detail.get_or_insert(format!("target state #{k} pulls back outside the source state set"));
            break;
        }
    }
    Ok(MorphismReport { unit, joins, pullback, detail })
}
