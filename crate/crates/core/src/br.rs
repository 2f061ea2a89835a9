//! Boolean reconfiguration instances from monotone circuits.
//!
//! Variable order: `y` (n+m wires), `e` (3), `f` (n), `g` (n), `k` (4n),
//! `l` (2), `a` (m+n). The classical clock advances `K` before `L`, so the
//! half step `K = 1^j, L = L(j-1)` is also a valid clock state.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::cnf::{forbid, neg, pos, Clause, Cnf, Cond};
use crate::error::{Error, Result};
use crate::gscon::{l_flip_bit, l_pattern};
use crate::monotone::{GateKind, MmsaInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Y,
    E,
    F,
    G,
    K,
    L,
    A,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Y => 'y',
            Role::E => 'e',
            Role::F => 'f',
            Role::G => 'g',
            Role::K => 'k',
            Role::L => 'l',
            Role::A => 'a',
        }
    }

    pub fn from_letter(c: char) -> Option<Role> {
        Some(match c {
            'y' => Role::Y,
            'e' => Role::E,
            'f' => Role::F,
            'g' => Role::G,
            'k' => Role::K,
            'l' => Role::L,
            'a' => Role::A,
            _ => return None,
        })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Role of one variable; `index` is 1-based within its register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarRole {
    pub role: Role,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrLayout {
    pub y: Range<usize>,
    pub e: Range<usize>,
    pub f: Range<usize>,
    pub g: Range<usize>,
    pub k: Range<usize>,
    pub l: Range<usize>,
    pub a: Range<usize>,
}

impl BrLayout {
    pub fn new(n: usize, m: usize) -> BrLayout {
        let mut at = 0;
        let mut take = |len: usize| {
            let r = at..at + len;
            at += len;
            r
        };
        BrLayout {
            y: take(n + m),
            e: take(3),
            f: take(n),
            g: take(n),
            k: take(4 * n),
            l: take(2),
            a: take(m + n),
        }
    }

    pub fn total(&self) -> usize {
        self.a.end
    }

    pub fn roles(&self) -> Vec<VarRole> {
        let regs = [
            (Role::Y, &self.y),
            (Role::E, &self.e),
            (Role::F, &self.f),
            (Role::G, &self.g),
            (Role::K, &self.k),
            (Role::L, &self.l),
            (Role::A, &self.a),
        ];
        regs.iter()
            .flat_map(|(role, r)| (1..=r.len()).map(move |index| VarRole { role: *role, index }))
            .collect()
    }

    /// Rebuild the layout from a role list, checking it has the canonical shape.
    pub fn from_roles(roles: &[VarRole]) -> Result<BrLayout> {
        let count = |r: Role| roles.iter().filter(|v| v.role == r).count();
        let n = count(Role::F);
        let m = count(Role::Y)
            .checked_sub(n)
            .ok_or_else(|| Error::Parse("fewer y variables than inputs".into()))?;
        let lay = BrLayout::new(n, m);
        if lay.roles() != roles {
            return Err(Error::Parse("role map is not in canonical order".into()));
        }
        Ok(lay)
    }

    fn at(r: &Range<usize>, i: usize) -> usize {
        debug_assert!(i >= 1 && r.start + i - 1 < r.end);
        r.start + i - 1
    }
    pub fn y_(&self, i: usize) -> usize {
        Self::at(&self.y, i)
    }
    pub fn e_(&self, i: usize) -> usize {
        Self::at(&self.e, i)
    }
    pub fn f_(&self, i: usize) -> usize {
        Self::at(&self.f, i)
    }
    pub fn g_(&self, i: usize) -> usize {
        Self::at(&self.g, i)
    }
    pub fn k_(&self, i: usize) -> usize {
        Self::at(&self.k, i)
    }
    pub fn l_(&self, i: usize) -> usize {
        Self::at(&self.l, i)
    }
    pub fn a_(&self, i: usize) -> usize {
        Self::at(&self.a, i)
    }
}

/// Which OR gadget to emit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrStyle {
    /// `(y_i or y_j or not y_k)`: exact OR semantics.
    #[default]
    Corrected,
    /// `(y_i or y_j or y_k)`: forces the output true.
    Printed,
}

#[derive(Clone, Debug, Default)]
pub struct BrOptions {
    pub or_style: OrStyle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrInstance {
    pub formula: Cnf,
    pub layout: BrLayout,
    pub roles: Vec<VarRole>,
    pub start: Vec<bool>,
    pub target: Vec<bool>,
    pub h: usize,
    pub hprime: usize,
    pub n: usize,
    pub m: usize,
    pub g: usize,
    pub gprime: usize,
}

/// Clauses for one gate writing `out` from `ins`, each widened by `not e1`
/// when `gate` is set.
pub fn gate_gadget(
    kind: GateKind,
    ins: &[usize],
    out: usize,
    gate: Option<usize>,
    style: OrStyle,
) -> Vec<Clause> {
    let raw: Vec<Vec<_>> = match kind {
        GateKind::Not => vec![vec![pos(ins[0]), pos(out)], vec![neg(ins[0]), neg(out)]],
        GateKind::And => vec![
            vec![neg(out), pos(ins[0])],
            vec![neg(out), pos(ins[1])],
            vec![neg(ins[0]), neg(ins[1]), pos(out)],
        ],
        GateKind::Or => vec![
            vec![pos(out), neg(ins[0])],
            vec![pos(out), neg(ins[1])],
            match style {
                OrStyle::Corrected => vec![pos(ins[0]), pos(ins[1]), neg(out)],
                OrStyle::Printed => vec![pos(ins[0]), pos(ins[1]), pos(out)],
            },
        ],
    };
    raw.into_iter()
        .filter_map(|mut c| {
            if let Some(e1) = gate {
                c.push(neg(e1));
            }
            Clause::new(c)
        })
        .collect()
}

/// GO clauses on `(e1, e2, e3)`.
pub fn go_clauses(e: [usize; 3]) -> Vec<Clause> {
    vec![
        Clause::new([pos(e[0]), pos(e[1]), neg(e[2])]).unwrap(),
        Clause::new([pos(e[0]), neg(e[1]), pos(e[2])]).unwrap(),
    ]
}

/// `L` values accepted while `K = 1^j`.
pub fn allowed_l(j: usize) -> Vec<[bool; 2]> {
    if j == 0 {
        vec![l_pattern(0)]
    } else {
        vec![l_pattern(j - 1), l_pattern(j)]
    }
}

/// Clock clauses (unary `K`, `L` tracking `K`).
fn clock_clauses(lay: &BrLayout, n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    let k = |i: usize| lay.k_(i);
    for i in 1..4 * n {
        out.extend(forbid(&[Cond::is(&[k(i), k(i + 1)], &[false, true])]));
    }
    let l = [lay.l_(1), lay.l_(2)];
    let mut tie = |ks: &[usize], kb: &[bool], j: usize| {
        let ok = allowed_l(j);
        let pats: Vec<&[bool]> = ok.iter().map(|p| p.as_slice()).collect();
        out.extend(forbid(&[Cond::is(ks, kb), Cond::none_of(&l, &pats)]));
    };
    tie(&[k(1)], &[false], 0);
    for j in 1..4 * n {
        tie(&[k(j), k(j + 1)], &[true, false], j);
    }
    tie(&[k(4 * n)], &[true], 4 * n);
    out
}

/// Compile an MMSA instance.
pub fn compile_br(q: &MmsaInstance, opts: &BrOptions) -> Result<BrInstance> {
    let c = &q.circuit;
    c.check()?;
    let n = c.n;
    if n == 0 {
        return Err(Error::Degenerate("circuit has no inputs".into()));
    }
    let m = c.m();
    let lay = BrLayout::new(n, m);
    let e1 = lay.e_(1);
    let mut cl = Vec::new();

    for gate in &c.gates {
        let ins: Vec<usize> = gate.inputs.iter().map(|&w| lay.y_(w + 1)).collect();
        cl.extend(gate_gadget(
            gate.kind,
            &ins,
            lay.y_(gate.out + 1),
            Some(e1),
            opts.or_style,
        ));
    }
    cl.push(Clause::new([neg(e1), pos(lay.y_(c.output + 1))]).unwrap());
    cl.extend(go_clauses([lay.e_(1), lay.e_(2), lay.e_(3)]));
    cl.push(Clause::new([neg(e1), pos(lay.k_(4 * n))]).unwrap());

    cl.extend(clock_clauses(&lay, n));

    let a_len = m + n;
    let l = [lay.l_(1), lay.l_(2)];
    // a frozen while L is 10 or 01
    for lp in [[true, false], [false, true]] {
        for i in 1..a_len {
            cl.extend(forbid(&[
                Cond::any_of(
                    &[lay.a_(i), lay.a_(i + 1)],
                    &[&[false, true], &[true, false]],
                ),
                Cond::is(&l, &lp),
            ]));
        }
    }
    // a_1 cleared at the third step of each block
    for i in 1..=n {
        cl.extend(forbid(&[
            Cond::is(&[lay.k_(4 * i - 1), lay.k_(4 * i)], &[true, false]),
            Cond::is(&[lay.a_(1)], &[true]),
        ]));
    }
    // y, f, g agree once their block has started
    let unequal: [&[bool]; 2] = [&[false, false, false], &[true, true, true]];
    for i in 0..n {
        let (kk, kb): (Vec<usize>, [bool; 2]) = if i == 0 {
            (vec![lay.k_(1), lay.k_(2)], [false, false])
        } else {
            (vec![lay.k_(4 * i), lay.k_(4 * i + 1)], [true, false])
        };
        cl.extend(forbid(&[
            Cond::none_of(&[lay.y_(i + 1), lay.f_(i + 1), lay.g_(i + 1)], &unequal),
            Cond::none_of(&kk, &[&kb]),
        ]));
    }
    // a_1 copies y_{i+1} at the first step of block i+1
    for i in 0..n {
        cl.extend(forbid(&[
            Cond::is(&[lay.k_(4 * i + 1), lay.k_(4 * i + 2)], &[true, false]),
            Cond::any_of(
                &[lay.y_(i + 1), lay.a_(1)],
                &[&[true, false], &[false, true]],
            ),
        ]));
    }

    let total = lay.total();
    let formula = Cnf::new(total, cl)?;
    if formula.max_width() > crate::cnf::MAX_CLAUSE_WIDTH {
        return Err(Error::InvalidCircuit(
            "a translated clause is wider than 7".into(),
        ));
    }
    let start = vec![false; total];
    let mut target = vec![false; total];
    target[lay.e_(2)] = true;
    target[lay.e_(3)] = true;
    let inst = BrInstance {
        roles: lay.roles(),
        formula,
        layout: lay,
        start,
        target,
        h: br_h(n, m, q.g),
        hprime: q.gprime * (m + n),
        n,
        m,
        g: q.g,
        gprime: q.gprime,
    };
    debug_assert!(inst.formula.eval(&inst.start) && inst.formula.eval(&inst.target));
    Ok(inst)
}

/// `h = 2(3g + 2g(m+n) + 4n + 4n) + 4`.
pub fn br_h(n: usize, m: usize, g: usize) -> usize {
    2 * (3 * g + 2 * g * (m + n) + 8 * n) + 4
}

/// Exact length of [`honest_br_path`] for a proof of weight `w` whose gate
/// wires hold `ones` set bits.
pub fn honest_br_length(n: usize, m: usize, w: usize, ones: usize) -> usize {
    2 * (3 * w + 2 * w * (m + n) + 8 * n) + 4 + 2 * ones
}

/// Flip sequence from `start` to `target` through accepted input `x`.
pub fn honest_br_path(
    inst: &BrInstance,
    circuit: &crate::monotone::MonotoneCircuit,
    x: &[bool],
) -> Result<Vec<usize>> {
    let n = inst.n;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let wires = circuit.wires(x)?;
    if !wires[circuit.output] {
        return Err(Error::Precondition("the circuit rejects this input".into()));
    }
    let weight = x.iter().filter(|&&b| b).count();
    if weight > inst.g {
        return Err(Error::Precondition(format!(
            "input weight {weight} exceeds g = {}",
            inst.g
        )));
    }
    let lay = &inst.layout;
    let a: Vec<usize> = lay.a.clone().collect();
    let mut fwd = Vec::new();
    for (i, &bit) in x.iter().enumerate() {
        let s = i + 1;
        if bit {
            fwd.extend([lay.y_(s), lay.f_(s), lay.g_(s)]);
            fwd.extend(&a);
        }
        for j in [4 * s - 3, 4 * s - 2] {
            fwd.push(lay.k_(j));
            fwd.push(lay.l_(1 + l_flip_bit(j)));
        }
        if bit {
            fwd.extend(a.iter().rev());
        }
        for j in [4 * s - 1, 4 * s] {
            fwd.push(lay.k_(j));
            fwd.push(lay.l_(1 + l_flip_bit(j)));
        }
    }
    let gate_wires: Vec<usize> = (n..wires.len())
        .filter(|&w| wires[w])
        .map(|w| lay.y_(w + 1))
        .collect();
    let mut path = fwd.clone();
    path.extend(&gate_wires);
    path.extend([lay.e_(1), lay.e_(2), lay.e_(3), lay.e_(1)]);
    path.extend(gate_wires.iter().rev());
    path.extend(fwd.iter().rev());
    Ok(path)
}

#[cfg(test)]
mod tests;
