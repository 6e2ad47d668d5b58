//! Dense two-phase simplex with Bland's rule, generic over the scalar.
//!
//! Solves `min c·x  s.t.  A x = b, x ≥ 0`. With exact rationals every pivot
//! is exact and termination follows from Bland's rule; with floats, entries
//! below `EPS_LP` count as zero.

use crate::scalar::Scalar;
use crate::tol::EPS_LP;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, x: Vec<T> },
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LpOutcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last entry is minus the objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    tol: T,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width();
        let piv = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for j in 0..=w {
                let v = row[j].clone() - f.clone() * pivot_row[j].clone();
                row[j] = v;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = col;
    }

    /// Runs Bland's rule over the columns `allowed`; returns false when
    /// unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let w = self.width();
        loop {
            let neg = -self.tol.clone();
            let Some(col) = (0..allowed).find(|&j| self.cost[j] < neg) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col] <= self.tol {
                    continue;
                }
                let ratio = row[w].clone() / row[col].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

pub fn minimize<T: Scalar>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    let m = lp.a.len();
    let n = lp.c.len();
    let tol = T::tolerance(EPS_LP);
    // Phase one on [A | I | b] with b ≥ 0.
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, (ai, bi)) in lp.a.iter().zip(&lp.b).enumerate() {
        assert_eq!(ai.len(), n, "constraint row width");
        let flip = *bi < T::zero();
        let sign = |x: &T| if flip { -x.clone() } else { x.clone() };
        let mut row: Vec<T> = ai.iter().map(sign).collect();
        row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        row.push(sign(bi));
        rows.push(row);
    }
    let w = n + m;
    let mut cost = vec![T::zero(); w + 1];
    for row in &rows {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[w] = cost[w].clone() - row[w].clone();
    }
    let mut t = Tableau { rows, cost, basis: (n..n + m).collect(), tol: tol.clone() };
    t.optimize(w);
    if -t.cost[w].clone() > tol {
        return LpOutcome::Infeasible;
    }
    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| t.rows[i][j].abs() > tol) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase two with the real costs.
    let mut cost = vec![T::zero(); w + 1];
    cost[..n].clone_from_slice(&lp.c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = lp.c[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=w {
            cost[j] = cost[j].clone() - cb.clone() * row[j].clone();
        }
    }
    t.cost = cost;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![T::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[w].clone();
    }
    LpOutcome::Optimal { value: -t.cost[w].clone(), x }
}

pub fn maximize<T: Scalar>(lp: &LinearProgram<T>) -> LpOutcome<T> {
    let neg = LinearProgram { a: lp.a.clone(), b: lp.b.clone(), c: lp.c.iter().map(|x| -x.clone()).collect() };
    match minimize(&neg) {
        LpOutcome::Optimal { value, x } => LpOutcome::Optimal { value: -value, x },
        other => other,
    }
}
