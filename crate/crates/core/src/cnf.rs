//! CNF formulas and a small penalty-to-clause translator.
//!
//! Variables are 0-based in memory and 1-based in DIMACS.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

pub fn pos(var: usize) -> Lit {
    Lit {
        var,
        positive: true,
    }
}

pub fn neg(var: usize) -> Lit {
    Lit {
        var,
        positive: false,
    }
}

impl Lit {
    pub fn negate(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, a: &[bool]) -> bool {
        a[self.var] == self.positive
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// Disjunction of literals over distinct variables, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause {
    pub lits: Vec<Lit>,
}

pub const MAX_CLAUSE_WIDTH: usize = 7;

impl Clause {
    /// `None` for a tautology. Duplicate literals are merged.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Option<Clause> {
        let set: BTreeSet<Lit> = lits.into_iter().collect();
        let lits: Vec<Lit> = set.into_iter().collect();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return None;
        }
        Some(Clause { lits })
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn satisfied_by(&self, a: &[bool]) -> bool {
        self.lits.iter().any(|l| l.holds(a))
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.lits.iter().any(|l| l.var == v)
    }

    fn subsumes(&self, other: &Clause) -> bool {
        self.lits.iter().all(|l| other.lits.contains(l))
    }

    /// `(positive mask, negative mask)` for formulas on at most 64 variables.
    pub fn masks(&self) -> (u64, u64) {
        let mut p = 0u64;
        let mut n = 0u64;
        for l in &self.lits {
            if l.positive {
                p |= 1 << l.var;
            } else {
                n |= 1 << l.var;
            }
        }
        (p, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cnf {
    pub n_vars: usize,
    pub clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(n_vars: usize, clauses: Vec<Clause>) -> Result<Cnf> {
        let f = Cnf { n_vars, clauses };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.lits.iter().any(|l| l.var >= self.n_vars) {
                return Err(Error::Domain(format!(
                    "clause {i} uses an undeclared variable"
                )));
            }
            if c.lits.windows(2).any(|w| w[0].var >= w[1].var) {
                return Err(Error::Domain(format!(
                    "clause {i} repeats or misorders a variable"
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, a: &[bool]) -> bool {
        debug_assert_eq!(a.len(), self.n_vars);
        self.clauses.iter().all(|c| c.satisfied_by(a))
    }

    pub fn first_unsatisfied(&self, a: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.satisfied_by(a))
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }
}

/// A condition on a few variables: their joint value lies in `patterns`.
#[derive(Clone, Debug)]
pub struct Cond {
    pub vars: Vec<usize>,
    pub patterns: Vec<Vec<bool>>,
}

impl Cond {
    /// The variables equal `bits`.
    pub fn is(vars: &[usize], bits: &[bool]) -> Cond {
        Cond {
            vars: vars.to_vec(),
            patterns: vec![bits.to_vec()],
        }
    }

    /// The variables take one of `pats`.
    pub fn any_of(vars: &[usize], pats: &[&[bool]]) -> Cond {
        Cond {
            vars: vars.to_vec(),
            patterns: pats.iter().map(|p| p.to_vec()).collect(),
        }
    }

    /// The variables avoid every pattern in `pats`.
    pub fn none_of(vars: &[usize], pats: &[&[bool]]) -> Cond {
        let k = vars.len();
        let patterns = (0..1usize << k)
            .map(|x| (0..k).map(|i| (x >> i) & 1 == 1).collect::<Vec<bool>>())
            .filter(|p| !pats.iter().any(|q| q == &p.as_slice()))
            .collect();
        Cond {
            vars: vars.to_vec(),
            patterns,
        }
    }

    fn holds(&self, a: &[bool]) -> bool {
        self.patterns
            .iter()
            .any(|p| self.vars.iter().zip(p).all(|(&v, &b)| a[v] == b))
    }

    /// Prime implicates of `not self` over its own variables.
    fn negation_cnf(&self) -> Vec<Clause> {
        let k = self.vars.len();
        // each allowed pattern is excluded by one full-width clause
        let mut cur: BTreeSet<Vec<Option<bool>>> = self
            .patterns
            .iter()
            .map(|p| p.iter().map(|&b| Some(!b)).collect())
            .collect();
        // merge clauses that differ in the sign of one variable
        let mut all = cur.clone();
        loop {
            let mut next = BTreeSet::new();
            let v: Vec<_> = cur.iter().cloned().collect();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    let diff: Vec<usize> = (0..k).filter(|&t| v[i][t] != v[j][t]).collect();
                    if diff.len() == 1 && v[i][diff[0]].is_some() && v[j][diff[0]].is_some() {
                        let mut m = v[i].clone();
                        m[diff[0]] = None;
                        next.insert(m);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            cur = next;
        }
        let clauses: Vec<Clause> = all
            .into_iter()
            .filter_map(|c| {
                Clause::new(c.iter().enumerate().filter_map(|(i, s)| {
                    s.map(|b| Lit {
                        var: self.vars[i],
                        positive: b,
                    })
                }))
            })
            .collect();
        prune(clauses)
    }
}

/// Drop duplicates and subsumed clauses.
pub fn prune(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort_by_key(|c| (c.width(), c.clone()));
    clauses.dedup();
    let mut kept: Vec<Clause> = Vec::new();
    for c in clauses {
        if !kept.iter().any(|k| k.subsumes(&c)) {
            kept.push(c);
        }
    }
    kept
}

/// CNF of `not (c_1 and ... and c_k)`: the assignment may not meet every
/// condition at once.
pub fn forbid(conds: &[Cond]) -> Vec<Clause> {
    let mut acc: Vec<Clause> = vec![Clause { lits: vec![] }];
    for c in conds {
        let part = c.negation_cnf();
        let mut next = Vec::new();
        for a in &acc {
            for b in &part {
                if let Some(m) = Clause::new(a.lits.iter().chain(&b.lits).copied()) {
                    next.push(m);
                }
            }
        }
        acc = prune(next);
    }
    acc
}

/// True when `a` meets every condition (brute-force reference for [`forbid`]).
pub fn all_hold(conds: &[Cond], a: &[bool]) -> bool {
    conds.iter().all(|c| c.holds(a))
}
