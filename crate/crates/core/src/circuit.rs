//! Quantum verifier circuits: gates, register layout, validation and
//! state-vector simulation.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ONE, ZERO};
use crate::C64;

/// Default cap on the number of qubits any state vector may span.
pub const DEFAULT_QUBIT_LIMIT: usize = 24;

const UNITARY_TOL: f64 = 1e-9;

/// A unitary on 1 to 3 qubits. `support[0]` is the most significant local bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub support: Vec<usize>,
    pub block: CMat,
}

impl Gate {
    pub fn new(support: Vec<usize>, block: CMat) -> Result<Self> {
        let s = support.len();
        if s == 0 || s > 3 {
            return Err(Error::InvalidCircuit(format!("gate acts on {s} qubits")));
        }
        if block.nrows() != 1 << s || block.ncols() != 1 << s {
            return Err(Error::DimensionMismatch {
                expected: 1 << s,
                got: block.nrows(),
            });
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s {
            return Err(Error::InvalidCircuit(format!(
                "repeated qubit in {support:?}"
            )));
        }
        Ok(Gate { support, block })
    }

    fn raw(support: Vec<usize>, block: CMat) -> Self {
        Gate { support, block }
    }

    pub fn x(q: usize) -> Self {
        Self::raw(vec![q], linalg::pauli_x())
    }

    pub fn h(q: usize) -> Self {
        Self::raw(vec![q], linalg::hadamard())
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::raw(vec![q], linalg::ry(theta))
    }

    pub fn identity(q: usize) -> Self {
        Self::raw(vec![q], linalg::identity(2))
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::raw(vec![control, target], linalg::cnot())
    }

    /// X on both qubits, the two-qubit flip used by honest paths.
    pub fn xx(a: usize, b: usize) -> Self {
        let x = linalg::pauli_x();
        Self::raw(vec![a, b], linalg::kron(&x, &x))
    }

    /// `u` on `target` when `control` reads `on`.
    pub fn controlled(control: usize, on: bool, target: usize, u: &CMat) -> Self {
        Self::raw(vec![control, target], linalg::controlled(u, on))
    }

    pub fn toffoli(a: usize, b: usize, target: usize) -> Self {
        let inner = linalg::cnot();
        Self::raw(vec![a, b, target], linalg::controlled(&inner, true))
    }

    pub fn dagger(&self) -> Self {
        Self::raw(self.support.clone(), self.block.adjoint())
    }

    pub fn arity(&self) -> usize {
        self.support.len()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        linalg::is_identity(&self.block, tol)
    }

    /// True when the gate maps every computational basis value of `qubit`
    /// to itself (block commutes with Z on that qubit).
    pub fn preserves_basis_of(&self, qubit: usize) -> bool {
        let Some(k) = self.support.iter().position(|&q| q == qubit) else {
            return true;
        };
        let s = self.support.len();
        let bit = 1 << (s - 1 - k);
        let d = 1 << s;
        (0..d).all(|r| {
            (0..d).all(|col| (r & bit) == (col & bit) || self.block[(r, col)].norm() < UNITARY_TOL)
        })
    }

    /// Same gate with every qubit index sent through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::raw(
            self.support.iter().map(|&q| map(q)).collect(),
            self.block.clone(),
        )
    }
}

/// Proof register `B`, ancilla register `C` and the output qubit (inside `C`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registers {
    pub proof: Range<usize>,
    pub ancilla: Range<usize>,
    pub output: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumCircuit {
    pub width: usize,
    pub registers: Registers,
    pub gates: Vec<Gate>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NonUnitary { gate: usize, deviation: f64 },
    QubitOutOfRange { gate: usize, qubit: usize },
    RepeatedQubit { gate: usize },
    BadArity { gate: usize, arity: usize },
    BlockDimension { gate: usize },
    RegistersNotPartition,
    OutputOutsideAncilla,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonUnitary { gate, deviation } => {
                write!(f, "gate {gate} is not unitary (deviation {deviation:.2e})")
            }
            Violation::QubitOutOfRange { gate, qubit } => {
                write!(f, "gate {gate} touches qubit {qubit} outside the circuit")
            }
            Violation::RepeatedQubit { gate } => write!(f, "gate {gate} repeats a qubit"),
            Violation::BadArity { gate, arity } => write!(f, "gate {gate} acts on {arity} qubits"),
            Violation::BlockDimension { gate } => write!(f, "gate {gate} has a mis-sized block"),
            Violation::RegistersNotPartition => write!(f, "registers do not partition the width"),
            Violation::OutputOutsideAncilla => write!(f, "output qubit is not an ancilla"),
        }
    }
}

/// Every structural problem in `c`; empty means valid.
pub fn validate_circuit(c: &QuantumCircuit) -> Vec<Violation> {
    let mut out = Vec::new();
    let r = &c.registers;
    let (first, second) = if r.proof.start <= r.ancilla.start {
        (&r.proof, &r.ancilla)
    } else {
        (&r.ancilla, &r.proof)
    };
    if first.start != 0
        || first.end != second.start
        || second.end != c.width
        || r.ancilla.is_empty()
    {
        out.push(Violation::RegistersNotPartition);
    }
    if !r.ancilla.contains(&r.output) {
        out.push(Violation::OutputOutsideAncilla);
    }
    for (i, g) in c.gates.iter().enumerate() {
        let s = g.support.len();
        if s == 0 || s > 3 {
            out.push(Violation::BadArity { gate: i, arity: s });
            continue;
        }
        if let Some(&q) = g.support.iter().find(|&&q| q >= c.width) {
            out.push(Violation::QubitOutOfRange { gate: i, qubit: q });
        }
        let mut sorted = g.support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s {
            out.push(Violation::RepeatedQubit { gate: i });
        }
        if g.block.nrows() != 1 << s || g.block.ncols() != 1 << s {
            out.push(Violation::BlockDimension { gate: i });
            continue;
        }
        let dev = linalg::unitarity_deviation(&g.block);
        if dev > UNITARY_TOL {
            out.push(Violation::NonUnitary {
                gate: i,
                deviation: dev,
            });
        }
    }
    out
}

impl QuantumCircuit {
    /// Build and validate.
    pub fn new(width: usize, registers: Registers, gates: Vec<Gate>) -> Result<Self> {
        let c = QuantumCircuit {
            width,
            registers,
            gates,
        };
        c.check()?;
        Ok(c)
    }

    /// Circuit with proof `[0, n)` and ancilla `[n, n + q)`; output is the
    /// first ancilla qubit.
    pub fn standard(n: usize, q: usize, gates: Vec<Gate>) -> Result<Self> {
        let regs = Registers {
            proof: 0..n,
            ancilla: n..n + q,
            output: n,
        };
        Self::new(n + q, regs, gates)
    }

    pub fn check(&self) -> Result<()> {
        let v = validate_circuit(self);
        if v.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidCircuit(msg.join("; ")))
        }
    }

    /// Number of gates, `T`.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn proof_len(&self) -> usize {
        self.registers.proof.len()
    }

    pub fn ancilla_len(&self) -> usize {
        self.registers.ancilla.len()
    }

    pub fn dagger(&self) -> Self {
        QuantumCircuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::dagger).collect(),
        }
    }

    /// True when no gate changes the computational-basis value of any proof qubit.
    pub fn preserves_proof_basis(&self) -> bool {
        self.gates.iter().all(|g| {
            self.registers
                .proof
                .clone()
                .all(|q| g.preserves_basis_of(q))
        })
    }
}

/// Proof fed to a verifier: a basis string (`bits[i]` is proof qubit `i`) or
/// amplitudes over the `2^n` proof basis (bit `i` of the index is proof qubit `i`).
#[derive(Clone, Debug, PartialEq)]
pub enum ProofInput {
    Basis(Vec<bool>),
    Amplitudes(Vec<C64>),
}

impl From<Vec<bool>> for ProofInput {
    fn from(v: Vec<bool>) -> Self {
        ProofInput::Basis(v)
    }
}

impl From<&[bool]> for ProofInput {
    fn from(v: &[bool]) -> Self {
        ProofInput::Basis(v.to_vec())
    }
}

/// `|proof>|0...0>` on the circuit's width.
pub fn initial_state(c: &QuantumCircuit, proof: &ProofInput, limit: usize) -> Result<Vec<C64>> {
    if c.width > limit {
        return Err(Error::ResourceLimit {
            what: "state vector",
            qubits: c.width,
            limit,
        });
    }
    let n = c.proof_len();
    let b0 = c.registers.proof.start;
    let mut st = vec![ZERO; 1 << c.width];
    match proof {
        ProofInput::Basis(bits) => {
            if bits.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: bits.len(),
                });
            }
            let idx = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0, |a, (i, _)| a | 1 << (b0 + i));
            st[idx] = ONE;
        }
        ProofInput::Amplitudes(amps) => {
            if amps.len() != 1 << n {
                return Err(Error::DimensionMismatch {
                    expected: 1 << n,
                    got: amps.len(),
                });
            }
            for (p, a) in amps.iter().enumerate() {
                st[p << b0] = *a;
            }
        }
    }
    Ok(st)
}

pub fn apply_gate(state: &mut [C64], width: usize, gate: &Gate) {
    linalg::apply_block(state, width, &gate.support, &gate.block);
}

/// Final state `V_T ... V_1 |proof>|0>`.
pub fn simulate(c: &QuantumCircuit, proof: &ProofInput) -> Result<Vec<C64>> {
    let mut st = initial_state(c, proof, DEFAULT_QUBIT_LIMIT)?;
    for g in &c.gates {
        apply_gate(&mut st, c.width, g);
    }
    Ok(st)
}

/// States after `0, 1, ..., T` gates.
pub fn simulate_steps(
    c: &QuantumCircuit,
    proof: &ProofInput,
    limit: usize,
) -> Result<Vec<Vec<C64>>> {
    let mut st = initial_state(c, proof, limit)?;
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(st.clone());
    for g in &c.gates {
        apply_gate(&mut st, c.width, g);
        out.push(st.clone());
    }
    Ok(out)
}

/// Probability of measuring the output qubit as 1 at the end.
pub fn acceptance_probability(c: &QuantumCircuit, proof: &ProofInput) -> Result<f64> {
    let st = simulate(c, proof)?;
    let bit = 1 << c.registers.output;
    Ok(st
        .iter()
        .enumerate()
        .filter(|(i, _)| i & bit != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// `max_x min(p_acc(x), 1 - p_acc(x))` over all basis proofs.
pub fn measured_epsilon(c: &QuantumCircuit) -> Result<f64> {
    let n = c.proof_len();
    if n > 20 {
        return Err(Error::ResourceLimit {
            what: "proof enumeration",
            qubits: n,
            limit: 20,
        });
    }
    let mut eps: f64 = 0.0;
    for x in 0..1usize << n {
        let bits: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
        let p = acceptance_probability(c, &ProofInput::Basis(bits))?;
        eps = eps.max(p.min(1.0 - p));
    }
    Ok(eps.max(0.0))
}

/// Amplify by recursive 3-way majority over copies of the ancilla register.
/// `repetitions` must be a power of 3; the proof register is shared, so the
/// circuit must not change it.
pub fn amplify(c: &QuantumCircuit, repetitions: usize) -> Result<QuantumCircuit> {
    if repetitions == 0 {
        return Err(Error::Domain("repetitions must be positive".into()));
    }
    let mut k = repetitions;
    while k.is_multiple_of(3) {
        k /= 3;
    }
    if k != 1 {
        return Err(Error::Domain(format!(
            "repetitions {repetitions} is not a power of 3"
        )));
    }
    let mut cur = c.clone();
    let mut k = repetitions;
    while k > 1 {
        cur = majority3(&cur)?;
        k /= 3;
    }
    Ok(cur)
}

fn majority3(c: &QuantumCircuit) -> Result<QuantumCircuit> {
    if !c.preserves_proof_basis() {
        return Err(Error::Precondition(
            "amplification needs a verifier that leaves the proof register unchanged".into(),
        ));
    }
    let n = c.proof_len();
    let q = c.ancilla_len();
    let b0 = c.registers.proof.start;
    let a0 = c.registers.ancilla.start;
    // new layout: proof [0,n), copies [n + j q, n + (j+1) q), majority output last
    let map = |copy: usize, old: usize| -> usize {
        if c.registers.proof.contains(&old) {
            old - b0
        } else {
            n + copy * q + (old - a0)
        }
    };
    let mut gates = Vec::new();
    for copy in 0..3 {
        gates.extend(c.gates.iter().map(|g| g.remap(|x| map(copy, x))));
    }
    let out = n + 3 * q;
    let o = [
        map(0, c.registers.output),
        map(1, c.registers.output),
        map(2, c.registers.output),
    ];
    gates.push(Gate::toffoli(o[0], o[1], out));
    gates.push(Gate::toffoli(o[0], o[2], out));
    gates.push(Gate::toffoli(o[1], o[2], out));
    let regs = Registers {
        proof: 0..n,
        ancilla: n..out + 1,
        output: out,
    };
    QuantumCircuit::new(out + 1, regs, gates)
}

/// A QMSA instance: verifier plus the two proof-weight thresholds `g <= g'`.
#[derive(Clone, Debug, PartialEq)]
pub struct QmsaInstance {
    pub circuit: QuantumCircuit,
    pub g: usize,
    pub gprime: usize,
    pub repetitions: usize,
}

impl QmsaInstance {
    pub fn new(circuit: QuantumCircuit, g: usize, gprime: usize) -> Result<Self> {
        circuit.check()?;
        if g > gprime {
            return Err(Error::Domain(format!(
                "need g <= g', got g={g}, g'={gprime}"
            )));
        }
        if gprime > circuit.proof_len() {
            return Err(Error::Domain(format!(
                "g'={gprime} exceeds the proof length {}",
                circuit.proof_len()
            )));
        }
        Ok(QmsaInstance {
            circuit,
            g,
            gprime,
            repetitions: 1,
        })
    }

    pub fn with_repetitions(mut self, repetitions: usize) -> Result<Self> {
        amplify(&self.circuit, repetitions)?;
        self.repetitions = repetitions;
        Ok(self)
    }

    /// The verifier actually compiled (amplified when `repetitions > 1`).
    pub fn verifier(&self) -> Result<QuantumCircuit> {
        amplify(&self.circuit, self.repetitions)
    }

    pub fn epsilon(&self) -> Result<f64> {
        measured_epsilon(&self.verifier()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn accept_all() -> QuantumCircuit {
        QuantumCircuit::standard(1, 1, vec![Gate::x(1)]).unwrap()
    }

    #[test]
    fn x_on_output_accepts() {
        let p = acceptance_probability(&accept_all(), &vec![false].into()).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn copy_verifier_accepts_proof_bit() {
        let c = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)]).unwrap();
        assert!(acceptance_probability(&c, &vec![true].into()).unwrap() > 0.999);
        assert!(acceptance_probability(&c, &vec![false].into()).unwrap() < 1e-12);
        assert_eq!(measured_epsilon(&c).unwrap(), 0.0);
    }

    #[test]
    fn non_unitary_is_reported() {
        let bad = Gate::raw(vec![0], linalg::identity(2) * linalg::c(2.0, 0.0));
        let c = QuantumCircuit {
            width: 2,
            registers: Registers {
                proof: 0..1,
                ancilla: 1..2,
                output: 1,
            },
            gates: vec![bad],
        };
        let v = validate_circuit(&c);
        assert!(matches!(v[0], Violation::NonUnitary { gate: 0, .. }));
    }

    #[test]
    fn registers_must_partition() {
        let c = QuantumCircuit {
            width: 3,
            registers: Registers {
                proof: 0..1,
                ancilla: 1..2,
                output: 1,
            },
            gates: vec![],
        };
        assert_eq!(validate_circuit(&c), vec![Violation::RegistersNotPartition]);
    }

    #[test]
    fn over_limit_width_errors() {
        let c = QuantumCircuit::standard(1, 25, vec![]).unwrap();
        assert!(matches!(
            simulate(&c, &vec![false].into()),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn majority_amplifies_error() {
        let theta = 2.0 * (0.2f64).sqrt().asin(); // accepts with prob 0.2
        let c = QuantumCircuit::standard(1, 1, vec![Gate::ry(1, theta)]).unwrap();
        let a = amplify(&c, 3).unwrap();
        let p = acceptance_probability(&a, &vec![false].into()).unwrap();
        let e = 0.2f64;
        let expect = 3.0 * e * e * (1.0 - e) + e * e * e;
        assert!((p - expect).abs() < 1e-12);
        assert!(amplify(&c, 2).is_err());
    }

    #[test]
    fn proof_preservation_detects_writes() {
        let ok = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)]).unwrap();
        let bad = QuantumCircuit::standard(1, 1, vec![Gate::cnot(1, 0)]).unwrap();
        assert!(ok.preserves_proof_basis());
        assert!(!bad.preserves_proof_basis());
    }

    fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
        (0..width, 0..width, 0.0..6.3f64, 0..3usize).prop_map(move |(a, b, t, kind)| {
            let b = if a == b { (a + 1) % width } else { b };
            match kind {
                0 => Gate::ry(a, t),
                1 => Gate::cnot(a, b),
                _ => Gate::h(a),
            }
        })
    }

    proptest! {
        #[test]
        fn simulation_preserves_norm(gates in proptest::collection::vec(arb_gate(4), 0..12), x in 0..4usize) {
            let c = QuantumCircuit::standard(2, 2, gates).unwrap();
            let bits = vec![x & 1 == 1, x & 2 == 2];
            let st = simulate(&c, &bits.into()).unwrap();
            prop_assert!((linalg::norm(&st) - 1.0).abs() < 1e-9);
        }

        #[test]
        fn identity_insertion_keeps_acceptance(gates in proptest::collection::vec(arb_gate(3), 1..8), at in 0..8usize) {
            let c = QuantumCircuit::standard(1, 2, gates.clone()).unwrap();
            let mut g2 = gates;
            let at = at.min(g2.len());
            g2.insert(at, Gate::identity(2));
            let c2 = QuantumCircuit::standard(1, 2, g2).unwrap();
            for b in [false, true] {
                let p1 = acceptance_probability(&c, &vec![b].into()).unwrap();
                let p2 = acceptance_probability(&c2, &vec![b].into()).unwrap();
                prop_assert!((p1 - p2).abs() < 1e-12);
            }
        }
    }
}
