//! Feynman-Kitaev circuit-to-Hamiltonian construction with a unary clock.
//!
//! Clock qubit `k` (1-based) reads 1 exactly when the time is at least `k`,
//! so time `t` is the pattern `1^t 0^(T-t)`.

mod prep;

use std::f64::consts::PI;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::circuit::{self, Gate, ProofInput, QuantumCircuit};
use crate::error::{Error, Result};
use crate::hamiltonian::{LocalTerm, TermTag};
use crate::linalg::{self, CMat};
use crate::C64;

pub use prep::{history_prep_circuit, HISTORY_PREP_COST};

#[derive(Clone, Debug, PartialEq)]
pub struct KitaevHamiltonian {
    /// The circuit the clock counts, after padding.
    pub circuit: QuantumCircuit,
    pub clock: Range<usize>,
    pub n_qubits: usize,
    pub input: Vec<LocalTerm>,
    pub prop: Vec<LocalTerm>,
    pub output: Vec<LocalTerm>,
    pub stab: Vec<LocalTerm>,
    /// Set when the source circuit had no gates and an identity was added.
    pub padded: bool,
}

impl KitaevHamiltonian {
    /// Number of clock steps `T`.
    pub fn t(&self) -> usize {
        self.circuit.len()
    }

    /// Qubit index of 1-based clock position `k`.
    pub fn clock_qubit(&self, k: usize) -> usize {
        self.clock.start + k - 1
    }

    /// `H_in + H_prop + H_stab`, the part scaled by `mu`.
    pub fn penalty_terms(&self) -> Vec<LocalTerm> {
        let mut v = self.input.clone();
        v.extend(self.prop.iter().cloned());
        v.extend(self.stab.iter().cloned());
        v
    }

    /// Every term with unit coefficient.
    pub fn terms(&self) -> Vec<LocalTerm> {
        let mut v = self.penalty_terms();
        v.extend(self.output.iter().cloned());
        v
    }

    /// `mu (H_in + H_prop + H_stab) + H_out`.
    pub fn scaled(&self, mu: f64) -> Vec<LocalTerm> {
        let mut v: Vec<LocalTerm> = self
            .penalty_terms()
            .into_iter()
            .map(|t| {
                let c = t.coeff * mu;
                t.with_coeff(c)
            })
            .collect();
        v.extend(self.output.iter().cloned());
        v
    }
}

fn padded(c: &QuantumCircuit) -> (QuantumCircuit, bool) {
    if c.is_empty() {
        let mut p = c.clone();
        p.gates.push(Gate::identity(c.registers.output));
        (p, true)
    } else {
        (c.clone(), false)
    }
}

fn clock_bits(ks: &[usize], t: usize) -> Vec<bool> {
    ks.iter().map(|&k| k <= t).collect()
}

/// Compile a verifier into `H_in + H_prop + H_out + H_stab`. Clock qubits are
/// appended after the circuit's width.
pub fn compile_kitaev(c: &QuantumCircuit) -> Result<KitaevHamiltonian> {
    c.check()?;
    let (circ, was_padded) = padded(c);
    if was_padded {
        log::warn!("circuit has no gates; padded with one identity gate");
    }
    let w = circ.width;
    let t_max = circ.len();
    let clock = w..w + t_max;
    let d = |k: usize| w + k - 1;
    let p0 = linalg::projector(&[false]);
    let p1 = linalg::projector(&[true]);

    let input = circ
        .registers
        .ancilla
        .clone()
        .map(|a| LocalTerm::new(vec![a, d(1)], linalg::kron(&p1, &p0), TermTag::In))
        .collect();

    let output = vec![LocalTerm::new(
        vec![circ.registers.output, d(t_max)],
        linalg::kron(&p0, &p1),
        TermTag::Out,
    )];

    let stab = (1..t_max)
        .map(|k| {
            LocalTerm::new(
                vec![d(k), d(k + 1)],
                linalg::projector(&[false, true]),
                TermTag::Stab,
            )
        })
        .collect();

    let mut prop = Vec::with_capacity(t_max);
    for (i, gate) in circ.gates.iter().enumerate() {
        let t = i + 1;
        let ks: Vec<usize> = (t.saturating_sub(1).max(1)..=(t + 1).min(t_max)).collect();
        let before = linalg::projector(&clock_bits(&ks, t - 1));
        let after = linalg::projector(&clock_bits(&ks, t));
        let fwd = {
            let bits_a = clock_bits(&ks, t);
            let bits_b = clock_bits(&ks, t - 1);
            let dim = 1 << ks.len();
            let mut m = CMat::zeros(dim, dim);
            m[(
                linalg::bits_to_index(&bits_a),
                linalg::bits_to_index(&bits_b),
            )] = linalg::ONE;
            m
        };
        let gd = 1 << gate.arity();
        let id = linalg::identity(gd);
        let u = &gate.block;
        let block = (linalg::kron(&id, &before) + linalg::kron(&id, &after)
            - linalg::kron(u, &fwd)
            - linalg::kron(&u.adjoint(), &fwd.adjoint()))
            * C64::new(0.5, 0.0);
        let mut support = gate.support.clone();
        support.extend(ks.iter().map(|&k| d(k)));
        prop.push(LocalTerm::new(support, block, TermTag::Prop).labelled(format!("t={t}")));
    }

    Ok(KitaevHamiltonian {
        n_qubits: w + t_max,
        clock,
        circuit: circ,
        input,
        prop,
        output,
        stab,
        padded: was_padded,
    })
}

/// `(T+1)^(-1/2) sum_t V_t...V_1 |proof>|0>|1^t 0^(T-t)>` on `width + T` qubits.
pub fn history_state(c: &QuantumCircuit, proof: &ProofInput) -> Result<Vec<C64>> {
    history_state_limited(c, proof, circuit::DEFAULT_QUBIT_LIMIT)
}

pub fn history_state_limited(
    c: &QuantumCircuit,
    proof: &ProofInput,
    limit: usize,
) -> Result<Vec<C64>> {
    let (circ, _) = padded(c);
    let w = circ.width;
    let t_max = circ.len();
    let total = w + t_max;
    if total > limit {
        return Err(Error::ResourceLimit {
            what: "history state",
            qubits: total,
            limit,
        });
    }
    let steps = circuit::simulate_steps(&circ, proof, limit)?;
    let scale = 1.0 / ((t_max + 1) as f64).sqrt();
    let mut psi = vec![linalg::ZERO; 1 << total];
    for (t, st) in steps.iter().enumerate() {
        let clock = ((1usize << t) - 1) << w;
        for (i, a) in st.iter().enumerate() {
            if a.norm_sqr() > 0.0 {
                psi[clock | i] = a * scale;
            }
        }
    }
    Ok(psi)
}

/// Thresholds of the completeness/soundness lemma for a `T`-gate verifier
/// with error `eps`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Bounds {
    /// YES-case ceiling on the ground energy, `eps / (T+1)`.
    pub alpha: f64,
    /// NO-case floor, `pi^2 (1 - sqrt eps) / (2 (T+1)^3)`.
    pub beta: f64,
    /// Lower bound on the gap of `H_in + H_prop + H_stab`, `pi^2 / (64 T^3)`.
    pub gap: f64,
    /// Default penalty scale, `32 pi^4 / beta^2`.
    pub mu: f64,
}

pub fn lemma1_bounds(t: usize, eps: f64) -> Result<Lemma1Bounds> {
    if t == 0 {
        return Err(Error::Domain("T must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!("epsilon {eps} outside [0, 1)")));
    }
    let tp1 = (t + 1) as f64;
    let beta = PI * PI * (1.0 - eps.sqrt()) / (2.0 * tp1.powi(3));
    Ok(Lemma1Bounds {
        alpha: eps / tp1,
        beta,
        gap: PI * PI / (64.0 * (t as f64).powi(3)),
        mu: 32.0 * PI.powi(4) / (beta * beta),
    })
}

#[cfg(test)]
mod tests;
