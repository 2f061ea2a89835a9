//! CNF evaluation, flip-path validation and exact breadth-first oracles.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::br::BrInstance;
use crate::cnf::Cnf;
use crate::error::{Error, Result};
use crate::gscon::GsconInstance;
use crate::hamiltonian::TermTag;

pub fn eval_cnf(formula: &Cnf, assignment: &[bool]) -> bool {
    formula.eval(assignment)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrPathVerdict {
    pub ok: bool,
    pub length: usize,
    /// 1-based step whose assignment violates the formula (0 when `start` does).
    pub first_violation: Option<usize>,
    pub violated_clause: Option<usize>,
    pub ends_at_target: bool,
    pub h: usize,
    pub hprime: usize,
    pub within_h: bool,
}

/// Apply single-bit flips from `start`, checking every assignment on the way.
pub fn validate_br_path(inst: &BrInstance, flips: &[usize]) -> BrPathVerdict {
    let f = &inst.formula;
    let mut a = inst.start.clone();
    let mut first_violation = None;
    let mut violated_clause = None;
    if let Some(c) = f.first_unsatisfied(&a) {
        first_violation = Some(0);
        violated_clause = Some(c);
    }
    for (i, &v) in flips.iter().enumerate() {
        if first_violation.is_some() {
            break;
        }
        if v >= f.n_vars {
            first_violation = Some(i + 1);
            break;
        }
        a[v] = !a[v];
        if let Some(c) = f.first_unsatisfied(&a) {
            first_violation = Some(i + 1);
            violated_clause = Some(c);
        }
    }
    let ends_at_target = first_violation.is_none() && a == inst.target;
    BrPathVerdict {
        ok: first_violation.is_none() && ends_at_target,
        length: flips.len(),
        first_violation,
        violated_clause,
        ends_at_target,
        h: inst.h,
        hprime: inst.hprime,
        within_h: flips.len() <= inst.h,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BfsOutcome {
    Found {
        length: usize,
        expanded: usize,
    },
    Disconnected {
        expanded: usize,
    },
    /// Search stopped; no path shorter than `depth` exists.
    BudgetExceeded {
        depth: usize,
        expanded: usize,
    },
}

impl BfsOutcome {
    pub fn length(&self) -> Option<usize> {
        match self {
            BfsOutcome::Found { length, .. } => Some(*length),
            _ => None,
        }
    }
}

pub fn to_mask(a: &[bool]) -> u64 {
    a.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Clause masks indexed by variable.
struct Index {
    by_var: Vec<Vec<(u64, u64)>>,
}

impl Index {
    fn new(f: &Cnf) -> Index {
        let mut by_var = vec![Vec::new(); f.n_vars];
        for c in &f.clauses {
            let m = c.masks();
            for l in &c.lits {
                by_var[l.var].push(m);
            }
        }
        Index { by_var }
    }

    /// Whether flipping `v` in a satisfying `s` keeps the formula satisfied.
    fn flip_ok(&self, s: u64, v: usize) -> bool {
        let t = s ^ (1 << v);
        self.by_var[v]
            .iter()
            .all(|&(p, n)| t & p != 0 || !t & n != 0)
    }
}

/// Level-synchronous BFS; returns the outcome and, when found, the flips.
fn shortest(
    n_vars: usize,
    s: u64,
    t: u64,
    budget: usize,
    ok: impl Fn(u64, usize) -> bool,
) -> (BfsOutcome, Option<Vec<usize>>) {
    if s == t {
        return (
            BfsOutcome::Found {
                length: 0,
                expanded: 0,
            },
            Some(vec![]),
        );
    }
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::from([(s, (s, usize::MAX))]);
    let mut frontier = vec![s];
    let mut expanded = 0;
    let mut depth = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            if expanded >= budget {
                return (BfsOutcome::BudgetExceeded { depth, expanded }, None);
            }
            expanded += 1;
            for v in 0..n_vars {
                if !ok(u, v) {
                    continue;
                }
                let w = u ^ (1 << v);
                if parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w, (u, v));
                if w == t {
                    let mut flips = Vec::new();
                    let mut cur = t;
                    while cur != s {
                        let (p, v) = parent[&cur];
                        flips.push(v);
                        cur = p;
                    }
                    flips.reverse();
                    return (
                        BfsOutcome::Found {
                            length: depth + 1,
                            expanded,
                        },
                        Some(flips),
                    );
                }
                next.push(w);
            }
        }
        frontier = next;
        depth += 1;
    }
    (BfsOutcome::Disconnected { expanded }, None)
}

fn bfs_setup(formula: &Cnf, s: &[bool], t: &[bool]) -> Result<Index> {
    if formula.n_vars > 64 || s.len() != formula.n_vars || t.len() != formula.n_vars {
        return Err(Error::Domain(format!(
            "search needs at most 64 variables and full assignments (formula has {})",
            formula.n_vars
        )));
    }
    if !formula.eval(s) || !formula.eval(t) {
        return Err(Error::Precondition(
            "endpoints must satisfy the formula".into(),
        ));
    }
    Ok(Index::new(formula))
}

/// Exact shortest flip path between satisfying assignments `s` and `t`,
/// expanding at most `budget` nodes.
pub fn bfs_shortest_path(
    formula: &Cnf,
    s: &[bool],
    t: &[bool],
    budget: usize,
) -> Result<BfsOutcome> {
    Ok(bfs_with_witness(formula, s, t, budget)?.0)
}

/// [`bfs_shortest_path`] plus one shortest flip sequence when one exists.
pub fn bfs_with_witness(
    formula: &Cnf,
    s: &[bool],
    t: &[bool],
    budget: usize,
) -> Result<(BfsOutcome, Option<Vec<usize>>)> {
    let idx = bfs_setup(formula, s, t)?;
    Ok(shortest(
        formula.n_vars,
        to_mask(s),
        to_mask(t),
        budget,
        |u, v| idx.flip_ok(u, v),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct XflipReport {
    /// Fewest gates from `{X, X (x) X}`.
    pub min_gates: Option<usize>,
    /// Fewest single-bit flips.
    pub min_single_flips: Option<usize>,
    /// `weight * |W|`.
    pub bound: usize,
    pub expanded: usize,
    pub complete: bool,
    pub satisfied: bool,
}

/// Register bits tracked by the X-flip search, in order B, F, G, K, L, M, E.
fn xflip_qubits(inst: &GsconInstance) -> Vec<usize> {
    let r = &inst.registers;
    [&r.b, &r.f, &r.g, &r.k, &r.l, &r.m, &r.e]
        .iter()
        .flat_map(|s| (*s).clone())
        .collect()
}

/// Minimum number of X / X(x)X gates taking `start` to a basis state with
/// at least `weight` ones in `B` and `K_{4n} = 1`, moving only through basis
/// states on which every diagonal constraint vanishes and `E` is 000 or 111.
pub fn xflip_search(inst: &GsconInstance, weight: usize, budget: usize) -> Result<XflipReport> {
    let qs = xflip_qubits(inst);
    if qs.len() > 64 {
        return Err(Error::ResourceLimit {
            what: "x-flip search",
            qubits: qs.len(),
            limit: 64,
        });
    }
    let pos: HashMap<usize, usize> = qs.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    // forbidden (mask, value) pairs from the diagonal terms
    let mut forbidden: Vec<(u64, u64)> = Vec::new();
    for t in inst
        .hamiltonian
        .iter()
        .filter(|t| t.tag == TermTag::Amp || t.tag == TermTag::Gated)
    {
        if !t.is_diagonal() {
            return Err(Error::Precondition(
                "constraint term is not diagonal".into(),
            ));
        }
        let k = t.support.len();
        // qubits outside the tracked registers stay 0
        let mask = t
            .support
            .iter()
            .filter_map(|q| pos.get(q))
            .fold(0u64, |m, &i| m | 1 << i);
        for x in 0..1usize << k {
            if t.block[(x, x)].re.abs() * t.coeff.abs() <= 1e-12 {
                continue;
            }
            let mut val = 0u64;
            let mut reachable = true;
            for (j, &q) in t.support.iter().enumerate() {
                let bit = (x >> (k - 1 - j)) & 1 == 1;
                match pos.get(&q) {
                    Some(&i) if bit => val |= 1 << i,
                    Some(_) => {}
                    None if bit => reachable = false,
                    None => {}
                }
            }
            if reachable {
                forbidden.push((mask, val));
            }
        }
    }
    let e_mask: u64 = inst.registers.e.clone().map(|q| 1u64 << pos[&q]).sum();
    let feasible = |s: u64| {
        let e = s & e_mask;
        (e == 0 || e == e_mask) && forbidden.iter().all(|&(m, v)| s & m != v)
    };
    let b_mask: u64 = inst.registers.b.clone().map(|q| 1u64 << pos[&q]).sum();
    let k_last = 1u64 << pos[&inst.registers.k_(4 * inst.n)];
    let goal = |s: u64| (s & b_mask).count_ones() as usize >= weight && s & k_last != 0;
    let nq = qs.len();
    let mut moves: Vec<u64> = (0..nq).map(|i| 1u64 << i).collect();
    let singles = moves.len();
    for i in 0..nq {
        for j in i + 1..nq {
            moves.push(1 << i | 1 << j);
        }
    }
    let start = 0u64;
    if !feasible(start) {
        return Err(Error::Precondition(
            "start state violates a diagonal constraint".into(),
        ));
    }
    let search = |moves: &[u64]| -> (Option<usize>, usize, bool) {
        if goal(start) {
            return (Some(0), 0, true);
        }
        let mut seen: HashSet<u64> = HashSet::from([start]);
        let mut frontier = vec![start];
        let mut expanded = 0;
        let mut depth = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &u in &frontier {
                if expanded >= budget {
                    return (None, expanded, false);
                }
                expanded += 1;
                for &mv in moves {
                    let w = u ^ mv;
                    if !feasible(w) {
                        continue;
                    }
                    if goal(w) {
                        return (Some(depth + 1), expanded, true);
                    }
                    if seen.insert(w) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        (None, expanded, true)
    };
    let (min_gates, e1, c1) = search(&moves);
    let (min_single_flips, e2, c2) = search(&moves[..singles]);
    let bound = weight * inst.w_len();
    Ok(XflipReport {
        satisfied: c1 && min_gates.is_none_or(|g| g >= bound),
        min_gates,
        min_single_flips,
        bound,
        expanded: e1 + e2,
        complete: c1 && c2,
    })
}

/// [`xflip_search`] with the target weight `g'`.
pub fn xflip_lower_bound(inst: &GsconInstance, budget: usize) -> Result<XflipReport> {
    xflip_search(inst, inst.gprime, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{neg, pos, Clause};

    #[test]
    fn bfs_small_examples() {
        let f = Cnf::new(2, vec![Clause::new([pos(0), pos(1)]).unwrap()]).unwrap();
        let r = bfs_shortest_path(&f, &[true, false], &[false, true], 100).unwrap();
        assert_eq!(r.length(), Some(2));
        let r = bfs_shortest_path(&f, &[true, false], &[true, false], 100).unwrap();
        assert_eq!(r.length(), Some(0));
        // x0 xor x1: solutions 10 and 01 are isolated
        let xor = Cnf::new(
            2,
            vec![
                Clause::new([pos(0), pos(1)]).unwrap(),
                Clause::new([neg(0), neg(1)]).unwrap(),
            ],
        )
        .unwrap();
        let r = bfs_shortest_path(&xor, &[true, false], &[false, true], 100).unwrap();
        assert!(matches!(r, BfsOutcome::Disconnected { .. }));
    }

    #[test]
    fn bfs_budget_is_reported() {
        let f = Cnf::new(6, vec![]).unwrap();
        let r = bfs_shortest_path(&f, &[false; 6], &[true; 6], 3).unwrap();
        assert!(matches!(r, BfsOutcome::BudgetExceeded { .. }));
    }

    #[test]
    fn bfs_rejects_unsatisfying_endpoints() {
        let f = Cnf::new(1, vec![Clause::new([pos(0)]).unwrap()]).unwrap();
        assert!(matches!(
            bfs_shortest_path(&f, &[false], &[true], 10),
            Err(Error::Precondition(_))
        ));
    }

    fn gscon(gates: Vec<crate::circuit::Gate>, n: usize, g: usize, gp: usize) -> GsconInstance {
        use crate::circuit::{QmsaInstance, QuantumCircuit};
        let v = QuantumCircuit::standard(n, 1, gates).unwrap();
        let q = QmsaInstance::new(v, g, gp).unwrap();
        crate::gscon::compile_gscon(&q, &Default::default()).unwrap()
    }

    #[test]
    fn xflip_copy_instance() {
        let inst = gscon(vec![crate::circuit::Gate::cnot(0, 1)], 1, 1, 1);
        let r = xflip_lower_bound(&inst, 1_000_000).unwrap();
        assert!(r.complete && r.satisfied, "{r:?}");
        assert!(r.min_gates.unwrap() >= inst.gprime * inst.w_len());
        // K and L must move together, so single flips never advance the clock
        assert_eq!(r.min_single_flips, None);
        // clock alone: 4n paired steps
        let r0 = xflip_search(&inst, 0, 1_000_000).unwrap();
        assert_eq!(r0.min_gates, Some(4));
        assert_eq!(r0.min_single_flips, None);
    }

    #[test]
    fn xflip_unreachable_weight() {
        let inst = gscon(vec![crate::circuit::Gate::x(1)], 1, 0, 1);
        let r = xflip_search(&inst, 2, 1_000_000).unwrap();
        assert!(r.complete);
        assert_eq!(r.min_gates, None);
    }
}
