//! Gate-path verification against a GSCON instance.

use serde::Serialize;

use crate::circuit::{apply_gate, Gate, DEFAULT_QUBIT_LIMIT};
use crate::error::{Error, Result};
use crate::gscon::GsconInstance;
use crate::linalg::{self, ONE, ZERO};
use crate::verify::energy::expectation;
use crate::C64;

#[derive(Clone, Debug)]
pub struct PathOptions {
    /// Absolute slack on the energy and distance thresholds.
    pub tol: f64,
    pub qubit_limit: usize,
}

impl Default for PathOptions {
    fn default() -> Self {
        PathOptions {
            tol: 1e-8,
            qubit_limit: DEFAULT_QUBIT_LIMIT,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathVerdict {
    pub ok: bool,
    pub length: usize,
    pub allowed_length: usize,
    pub max_intermediate_energy: f64,
    pub energy_threshold: f64,
    pub final_distance: f64,
    pub distance_threshold: f64,
    /// 1-based index of the first gate after which the energy exceeds the threshold.
    pub first_violation_index: Option<usize>,
    /// `max_i <v_i| P_E |v_i>`: weight outside `E in {000, 111}`.
    pub traversal_max_overlap: f64,
    pub energies: Vec<f64>,
}

/// Basis state `|bits>` (`bits[q]` is qubit `q`).
pub fn basis_state(bits: &[bool]) -> Vec<C64> {
    let idx = bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0usize, |a, (q, _)| a | 1 << q);
    let mut v = vec![ZERO; 1 << bits.len()];
    v[idx] = ONE;
    v
}

/// Apply `gates` to the start state, recording every intermediate state
/// `v_0, ..., v_m`.
pub fn path_states(inst: &GsconInstance, gates: &[Gate], limit: usize) -> Result<Vec<Vec<C64>>> {
    check_gates(inst, gates, limit)?;
    let mut st = basis_state(&inst.start);
    let mut out = vec![st.clone()];
    for g in gates {
        apply_gate(&mut st, inst.n_qubits, g);
        out.push(st.clone());
    }
    Ok(out)
}

fn check_gates(inst: &GsconInstance, gates: &[Gate], limit: usize) -> Result<()> {
    if inst.n_qubits > limit {
        return Err(Error::ResourceLimit {
            what: "path simulation",
            qubits: inst.n_qubits,
            limit,
        });
    }
    for (i, g) in gates.iter().enumerate() {
        if g.arity() > 2 {
            return Err(Error::Precondition(format!(
                "gate {i} acts on {} qubits",
                g.arity()
            )));
        }
        if g.support.iter().any(|&q| q >= inst.n_qubits) {
            return Err(Error::Domain(format!(
                "gate {i} touches a qubit outside the instance"
            )));
        }
        if linalg::unitarity_deviation(&g.block) > 1e-9 {
            return Err(Error::Domain(format!("gate {i} is not unitary")));
        }
    }
    Ok(())
}

/// Simulate a 2-local gate path from `start` and measure every energy, the
/// final distance to `target`, and the leakage out of `E in {000, 111}`.
pub fn verify_gscon_path(
    inst: &GsconInstance,
    gates: &[Gate],
    opts: &PathOptions,
) -> Result<PathVerdict> {
    check_gates(inst, gates, opts.qubit_limit)?;
    let n = inst.n_qubits;
    let target = basis_state(&inst.target);
    let e: Vec<usize> = inst.registers.e.clone().collect();
    let leak = |v: &[C64]| -> Result<f64> {
        let w0 = super::diagnostics::weight_on(v, &e, &[false; 3])?;
        let w1 = super::diagnostics::weight_on(v, &e, &[true; 3])?;
        Ok(1.0 - w0 - w1)
    };
    let mut st = basis_state(&inst.start);
    let mut energies = vec![expectation(&inst.hamiltonian, &st)?];
    let mut max_leak = leak(&st)?;
    for g in gates {
        apply_gate(&mut st, n, g);
        energies.push(expectation(&inst.hamiltonian, &st)?);
        max_leak = max_leak.max(leak(&st)?);
    }
    let threshold = inst.eta[0];
    let first_violation_index = energies.iter().position(|&x| x > threshold + opts.tol);
    let max_e = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let final_distance = linalg::distance(&st, &target);
    let ok = first_violation_index.is_none()
        && final_distance <= inst.eta[2] + opts.tol
        && gates.len() <= inst.m;
    Ok(PathVerdict {
        ok,
        length: gates.len(),
        allowed_length: inst.m,
        max_intermediate_energy: max_e,
        energy_threshold: threshold,
        final_distance,
        distance_threshold: inst.eta[2],
        first_violation_index,
        traversal_max_overlap: max_leak,
        energies,
    })
}
