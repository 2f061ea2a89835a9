//! The 2-local circuit `W` that maps `|x>|0>|0^T>` to the history state.

use crate::circuit::{Gate, QuantumCircuit, Registers};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ONE, ZERO};

/// Gates in `W` per source gate, at most: `|W| <= HISTORY_PREP_COST * T`.
pub const HISTORY_PREP_COST: usize = 56;

const TOL: f64 = 1e-12;

fn angle_for(p: f64) -> f64 {
    2.0 * p.sqrt().asin()
}

/// Build `W` on `width + T` qubits (clock appended). Every gate acts on at most
/// two qubits; the source circuit must be 2-local.
pub fn history_prep_circuit(c: &QuantumCircuit) -> Result<QuantumCircuit> {
    c.check()?;
    if c.registers.proof.start != 0 {
        return Err(Error::Unsupported(
            "history preparation expects the proof register first".into(),
        ));
    }
    let mut circ = c.clone();
    if circ.is_empty() {
        circ.gates.push(Gate::identity(circ.registers.output));
    }
    let w = circ.width;
    let t_max = circ.len();
    let d = |k: usize| w + k - 1;

    let mut gates = Vec::new();
    gates.push(Gate::ry(d(1), angle_for(t_max as f64 / (t_max + 1) as f64)));
    for k in 2..=t_max {
        let p = (t_max - k + 1) as f64 / (t_max - k + 2) as f64;
        gates.push(Gate::controlled(
            d(k - 1),
            true,
            d(k),
            &linalg::ry(angle_for(p)),
        ));
    }

    for (i, g) in circ.gates.iter().enumerate() {
        let clock = d(i + 1);
        match g.arity() {
            1 => {
                if !g.is_identity(TOL) {
                    gates.push(Gate::controlled(clock, true, g.support[0], &g.block));
                }
            }
            2 => gates.extend(controlled_two_qubit(
                clock,
                g.support[0],
                g.support[1],
                &g.block,
            )),
            k => {
                return Err(Error::Unsupported(format!(
                    "gate {i} acts on {k} qubits; history preparation needs a 2-local circuit"
                )))
            }
        }
    }

    let regs = Registers {
        proof: circ.registers.proof.clone(),
        ancilla: circ.registers.ancilla.start..w + t_max,
        output: circ.registers.output,
    };
    Ok(QuantumCircuit {
        width: w + t_max,
        registers: regs,
        gates,
    })
}

/// Doubly controlled `u`: fires when `c1 == v1` and `clock == 1`. Only the
/// clock qubit is toggled (and restored).
fn barenco(c1: usize, v1: bool, clock: usize, target: usize, u: &CMat) -> Vec<Gate> {
    let v = linalg::sqrt_unitary_2x2(u);
    let vd = v.adjoint();
    vec![
        Gate::controlled(c1, v1, target, &v),
        Gate::controlled(c1, v1, clock, &linalg::pauli_x()),
        Gate::controlled(clock, true, target, &vd),
        Gate::controlled(c1, v1, clock, &linalg::pauli_x()),
        Gate::controlled(clock, true, target, &v),
    ]
}

/// Rows/cols of the 4x4 block where the qubit at local position `pos`
/// (0 = most significant) has value `val`.
fn slice_indices(pos: usize, val: bool) -> [usize; 2] {
    let v = val as usize;
    if pos == 0 {
        [2 * v, 2 * v + 1]
    } else {
        [v, v + 2]
    }
}

/// If `u` is `|v><v| (x) U1 + |!v><!v| (x) I` with the control at `pos`, return `U1`.
fn as_controlled(u: &CMat, pos: usize, val: bool) -> Option<CMat> {
    let on = slice_indices(pos, val);
    let off = slice_indices(pos, !val);
    for &r in &on {
        for &c in &off {
            if u[(r, c)].norm() > TOL || u[(c, r)].norm() > TOL {
                return None;
            }
        }
    }
    for (a, &r) in off.iter().enumerate() {
        for (b, &c) in off.iter().enumerate() {
            let want = if a == b { ONE } else { ZERO };
            if (u[(r, c)] - want).norm() > TOL {
                return None;
            }
        }
    }
    Some(CMat::from_fn(2, 2, |a, b| u[(on[a], on[b])]))
}

fn controlled_two_qubit(clock: usize, qa: usize, qb: usize, u: &CMat) -> Vec<Gate> {
    if linalg::is_identity(u, TOL) {
        return Vec::new();
    }
    let qubits = [qa, qb];
    for pos in 0..2 {
        for val in [true, false] {
            if let Some(u1) = as_controlled(u, pos, val) {
                return barenco(qubits[pos], val, clock, qubits[1 - pos], &u1);
            }
        }
    }
    let mut out = Vec::new();
    for (i, j, g) in two_level_factors(u).into_iter().rev() {
        out.extend(controlled_two_level(clock, qa, qb, i, j, &g.adjoint()));
    }
    out
}

/// Two-level unitaries `G_1..G_K` (in order of application) with
/// `G_K ... G_1 u = I`. Each acts on local basis states `(i, j)`.
fn two_level_factors(u: &CMat) -> Vec<(usize, usize, CMat)> {
    let mut m = u.clone();
    let mut out = Vec::new();
    for col in 0..4 {
        for row in col + 1..4 {
            let b = m[(row, col)];
            if b.norm() < TOL {
                continue;
            }
            let a = m[(col, col)];
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let g = CMat::from_row_slice(2, 2, &[a.conj() / n, b.conj() / n, -b / n, a / n]);
            apply_two_level(&mut m, col, row, &g);
            out.push((col, row, g));
        }
        let d = m[(col, col)];
        if (d - ONE).norm() > TOL {
            let partner = col ^ 1;
            let g = CMat::from_row_slice(2, 2, &[d.conj(), ZERO, ZERO, ONE]);
            apply_two_level(&mut m, col, partner, &g);
            out.push((col, partner, g));
        }
    }
    out
}

fn apply_two_level(m: &mut CMat, i: usize, j: usize, g: &CMat) {
    for c in 0..m.ncols() {
        let (x, y) = (m[(i, c)], m[(j, c)]);
        m[(i, c)] = g[(0, 0)] * x + g[(0, 1)] * y;
        m[(j, c)] = g[(1, 0)] * x + g[(1, 1)] * y;
    }
}

/// Clock-controlled two-level unitary `g` on local states `(i, j)` of `(qa, qb)`.
fn controlled_two_level(
    clock: usize,
    qa: usize,
    qb: usize,
    i: usize,
    j: usize,
    g: &CMat,
) -> Vec<Gate> {
    let diff = i ^ j;
    if diff == 3 {
        let f = |x: usize| x ^ ((x >> 1) & 1);
        let mut v = vec![Gate::cnot(qa, qb)];
        v.extend(controlled_two_level(clock, qa, qb, f(i), f(j), g));
        v.push(Gate::cnot(qa, qb));
        return v;
    }
    // single differing bit: bit 1 is qa, bit 0 is qb
    let (target, other, other_bit) = if diff == 2 {
        (qa, qb, i & 1)
    } else {
        (qb, qa, (i >> 1) & 1)
    };
    let target_bit_of_i = if diff == 2 { (i >> 1) & 1 } else { i & 1 };
    let local = if target_bit_of_i == 0 {
        g.clone()
    } else {
        let x = linalg::pauli_x();
        &x * g * &x
    };
    barenco(other, other_bit == 1, clock, target, &local)
}
