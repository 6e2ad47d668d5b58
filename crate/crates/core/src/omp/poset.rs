use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite orthomodular poset candidate. Construction only checks that the
/// data is well-formed; [`FiniteOMP::validate`] checks the axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteOMP {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Reflexive-transitive closure of the declared order.
    leq: Vec<Vec<bool>>,
    comp: Vec<Option<usize>>,
    /// Declared joins of orthogonal pairs, keyed by the ordered pair.
    joins: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// One of `poset`, `bounds`, `a`, `b`, `c`, `d`, `complement-join`.
    pub axiom: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub elements: usize,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl FiniteOMP {
    /// `order` lists pairs `(a, b)` meaning `a ≤ b`; the closure is taken.
    /// `complement` may be partial so that broken inputs can be reported.
    pub fn from_raw(
        elements: Vec<String>,
        order: &[(String, String)],
        complement: &[(String, String)],
        joins: &[(String, String, String)],
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate element {e:?}")));
            }
        }
        let id = |s: &str| -> Result<usize> {
            index.get(s).copied().ok_or_else(|| Error::Parse(format!("unknown element {s:?}")))
        };
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in order {
            leq[id(a)?][id(b)?] = true;
        }
        transitive_closure(&mut leq);
        let mut comp = vec![None; n];
        for (a, b) in complement {
            comp[id(a)?] = Some(id(b)?);
        }
        let mut jmap = HashMap::new();
        for (a, b, c) in joins {
            let (a, b, c) = (id(a)?, id(b)?, id(c)?);
            jmap.insert((a, b), c);
            jmap.insert((b, a), c);
        }
        Ok(Self { names: elements, index, leq, comp, joins: jmap })
    }

    /// Expands a pasting of Boolean blocks, each given by its atoms. Subsets
    /// of different blocks are identified when they coincide or when their
    /// complements within the blocks coincide.
    pub fn from_blocks(blocks: &[Vec<String>]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Parse("at least one block is required".into()));
        }
        for b in blocks {
            let set: BTreeSet<&String> = b.iter().collect();
            if set.len() != b.len() || b.is_empty() {
                return Err(Error::Parse("blocks need distinct atoms".into()));
            }
            if b.len() > 16 {
                return Err(Error::Unsupported("blocks with more than 16 atoms".into()));
            }
        }
        // Every (block, subset) pair, identified by union–find.
        let mut reps: Vec<(usize, BTreeSet<String>)> = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            for mask in 0u32..(1 << b.len()) {
                let s = (0..b.len()).filter(|k| mask >> k & 1 == 1).map(|k| b[k].clone()).collect();
                reps.push((bi, s));
            }
        }
        let full: Vec<BTreeSet<String>> = blocks.iter().map(|b| b.iter().cloned().collect()).collect();
        let complement_in = |bi: usize, s: &BTreeSet<String>| -> BTreeSet<String> {
            full[bi].difference(s).cloned().collect()
        };
        let mut parent: Vec<usize> = (0..reps.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut by_set: BTreeMap<BTreeSet<String>, usize> = BTreeMap::new();
        let mut by_comp: BTreeMap<BTreeSet<String>, usize> = BTreeMap::new();
        for (k, (bi, s)) in reps.iter().enumerate() {
            for key in [(&mut by_set, s.clone()), (&mut by_comp, complement_in(*bi, s))] {
                let (map, set) = key;
                if let Some(&other) = map.get(&set) {
                    let (ra, rb) = (find(&mut parent, k), find(&mut parent, other));
                    parent[ra] = rb;
                } else {
                    map.insert(set, k);
                }
            }
        }
        let mut class_of = vec![0; reps.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = HashMap::new();
        for k in 0..reps.len() {
            let r = find(&mut parent, k);
            let c = *root_class.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of[k] = c;
            classes[c].push(k);
        }
        let names: Vec<String> = classes
            .iter()
            .map(|members| {
                let best = members
                    .iter()
                    .map(|&k| &reps[k])
                    .min_by_key(|(bi, s)| (s.len(), *bi))
                    .expect("nonempty class");
                subset_name(best.1.len() == full[best.0].len(), &best.1)
            })
            .collect();
        let n = classes.len();
        let mut leq = vec![vec![false; n]; n];
        let mut comp = vec![None; n];
        let mut joins = HashMap::new();
        let offsets: Vec<usize> = blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += 1 << b.len();
                Some(o)
            })
            .collect();
        for (bi, b) in blocks.iter().enumerate() {
            let size = 1u32 << b.len();
            let full_mask = size - 1;
            for x in 0..size {
                let cx = class_of[offsets[bi] + x as usize];
                comp[cx] = Some(class_of[offsets[bi] + (full_mask ^ x) as usize]);
                for y in 0..size {
                    let cy = class_of[offsets[bi] + y as usize];
                    if x & y == x {
                        leq[cx][cy] = true;
                    }
                    if x & y == 0 {
                        joins.insert((cx, cy), class_of[offsets[bi] + (x | y) as usize]);
                    }
                }
            }
        }
        transitive_closure(&mut leq);
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Self { names, index, leq, comp, joins })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    /// Looks up an element by name; a trailing `'` denotes the complement.
    pub fn element(&self, name: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        if let Some(base) = name.strip_suffix('\'') {
            let b = self.element(base)?;
            return self.comp[b].ok_or_else(|| Error::Parse(format!("{base:?} has no complement")));
        }
        Err(Error::Parse(format!("unknown element {name:?}")))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn complement(&self, a: usize) -> usize {
        self.comp[a].expect("validated logics have total complements")
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.comp[b].is_some_and(|cb| self.leq[a][cb])
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&z| (0..self.len()).all(|x| self.leq[z][x]))
    }

    pub fn one(&self) -> Option<usize> {
        (0..self.len()).find(|&u| (0..self.len()).all(|x| self.leq[x][u]))
    }

    fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.len()).filter(|&u| self.leq[a][u] && self.leq[b][u]).collect();
        ups.iter().copied().find(|&j| ups.iter().all(|&u| self.leq[j][u]))
    }

    fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.len()).filter(|&d| self.leq[d][a] && self.leq[d][b]).collect();
        downs.iter().copied().find(|&m| downs.iter().all(|&d| self.leq[d][m]))
    }

    /// `a ∨ b` for orthogonal `a, b`: the declared join, else the least
    /// upper bound when it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        if !self.orthogonal(a, b) {
            return None;
        }
        self.joins.get(&(a, b)).copied().or_else(|| self.lub(a, b))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.glb(a, b)
    }

    /// Orthogonal pairs `(a, b)` with `a < b` by index, both nonzero, and
    /// their join.
    pub fn orthogonal_joins(&self) -> Vec<(usize, usize, usize)> {
        let z = self.zero();
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if Some(a) == z || Some(b) == z || !self.orthogonal(a, b) {
                    continue;
                }
                if let Some(j) = self.join(a, b) {
                    out.push((a, b, j));
                }
            }
        }
        out
    }

    /// Checks antisymmetry, bounds, axioms (b), (a), (c), (d) and
    /// `p ∨ p' = I` in that order and reports the first failure.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport { elements: self.len(), violation: self.first_violation() }
    }

    fn first_violation(&self) -> Option<Violation> {
        let n = self.len();
        let v = |axiom, detail: String| Some(Violation { axiom, detail });
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return v("poset", format!("{} and {} are mutually below each other", self.names[a], self.names[b]));
                }
            }
        }
        let (Some(_), Some(one)) = (self.zero(), self.one()) else {
            return v("bounds", "no least or greatest element".into());
        };
        for a in 0..n {
            match self.comp[a] {
                None => return v("b", format!("{} has no orthocomplement", self.names[a])),
                Some(c) if self.comp[c] != Some(a) => {
                    return v("b", format!("({})'' ≠ {}", self.names[a], self.names[a]));
                }
                _ => {}
            }
        }
        for p in 0..n {
            for q in 0..n {
                if self.leq[q][p] && !self.leq[self.complement(p)][self.complement(q)] {
                    return v("a", format!("{} ≤ {} but not {}' ≤ {}'", self.names[q], self.names[p], self.names[p], self.names[q]));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if !self.orthogonal(p, q) {
                    continue;
                }
                let lub = self.lub(p, q);
                let declared = self.joins.get(&(p, q)).copied();
                match (declared, lub) {
                    (_, None) => {
                        return v("c", format!("{} ⊥ {} has no supremum", self.names[p], self.names[q]));
                    }
                    (Some(d), Some(l)) if d != l => {
                        return v("c", format!("declared join of {} and {} is not the supremum", self.names[p], self.names[q]));
                    }
                    _ => {}
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if !self.leq[q][p] {
                    continue;
                }
                let ok = self
                    .meet(p, self.complement(q))
                    .and_then(|m| self.join(q, m))
                    .is_some_and(|j| j == p);
                if !ok {
                    return v("d", format!("orthomodular law fails for {} ≤ {}", self.names[q], self.names[p]));
                }
            }
        }
        for p in 0..n {
            if self.join(p, self.complement(p)) != Some(one) {
                return v("complement-join", format!("{} ∨ {}' ≠ I", self.names[p], self.names[p]));
            }
        }
        None
    }
}

fn subset_name(is_full: bool, s: &BTreeSet<String>) -> String {
    if s.is_empty() {
        "0".into()
    } else if is_full {
        "1".into()
    } else {
        s.iter().cloned().collect::<Vec<_>>().join("+")
    }
}

fn transitive_closure(r: &mut [Vec<bool>]) {
    let n = r.len();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
}
