//! Ground-state entanglement instances from QMSA verifiers.
//!
//! The verifier `V` is wrapped into `W`: a layer of `S1` gates copying each
//! proof bit into `E` and `E'`, a layer of `S2` gates that put `F_i F'_i` into
//! a Bell pair when the proof bit is 1, then `V`, then `2n + T` identities.
//! The cut is `A = E u F` against everything else.

use std::ops::Range;

use crate::circuit::{self, Gate, ProofInput, QmsaInstance, QuantumCircuit, Registers};
use crate::error::{Error, Result};
use crate::hamiltonian::LocalTerm;
use crate::kitaev::{self, compile_kitaev, lemma1_bounds, KitaevHamiltonian};
use crate::linalg::{self, CMat};
use crate::verify::{entanglement_entropy, Entanglement};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GseLayout {
    pub b: Range<usize>,
    pub c: Range<usize>,
    pub e: Range<usize>,
    pub e2: Range<usize>,
    pub f: Range<usize>,
    pub f2: Range<usize>,
    pub d: Range<usize>,
}

/// Block of the product `gates` (time order) on `support`.
fn compose(support: &[usize], gates: &[Gate]) -> CMat {
    let s = support.len();
    let dim = 1usize << s;
    let local = |q: usize| s - 1 - support.iter().position(|&x| x == q).unwrap();
    let mut m = CMat::zeros(dim, dim);
    for col in 0..dim {
        let mut st = vec![linalg::ZERO; dim];
        st[col] = linalg::ONE;
        for g in gates {
            circuit::apply_gate(&mut st, s, &g.remap(local));
        }
        for (r, a) in st.into_iter().enumerate() {
            m[(r, col)] = a;
        }
    }
    m
}

/// `S1 = CNOT(b -> e) then CNOT(b -> e2)`, as two gates.
pub fn s1_decomposed(b: usize, e: usize, e2: usize) -> [Gate; 2] {
    [Gate::cnot(b, e), Gate::cnot(b, e2)]
}

/// `S2 = controlled-H(b -> f) then CNOT(f -> f2)`, as two gates.
pub fn s2_decomposed(b: usize, f: usize, f2: usize) -> [Gate; 2] {
    [
        Gate::controlled(b, true, f, &linalg::hadamard()),
        Gate::cnot(f, f2),
    ]
}

/// `S1` as one 3-qubit gate on `[b, e, e2]`.
pub fn s1_gate(b: usize, e: usize, e2: usize) -> Gate {
    let sup = vec![b, e, e2];
    let block = compose(&sup, &s1_decomposed(b, e, e2));
    Gate {
        support: sup,
        block,
    }
}

/// `S2` as one 3-qubit gate on `[b, f, f2]`.
pub fn s2_gate(b: usize, f: usize, f2: usize) -> Gate {
    let sup = vec![b, f, f2];
    let block = compose(&sup, &s2_decomposed(b, f, f2));
    Gate {
        support: sup,
        block,
    }
}

/// `W` on `n + q + 4n` qubits (proof, V's ancilla, E, E', F, F').
pub fn build_w_circuit(v: &QuantumCircuit) -> Result<(QuantumCircuit, GseLayout)> {
    v.check()?;
    if v.registers.proof.start != 0 {
        return Err(Error::InvalidCircuit(
            "proof register must come first".into(),
        ));
    }
    let n = v.proof_len();
    if n == 0 {
        return Err(Error::Degenerate("proof register is empty".into()));
    }
    let w0 = v.width;
    let e = w0..w0 + n;
    let e2 = w0 + n..w0 + 2 * n;
    let f = w0 + 2 * n..w0 + 3 * n;
    let f2 = w0 + 3 * n..w0 + 4 * n;
    let mut gates = Vec::new();
    for i in 0..n {
        gates.push(s1_gate(i, e.start + i, e2.start + i));
    }
    for i in 0..n {
        gates.push(s2_gate(i, f.start + i, f2.start + i));
    }
    gates.extend(v.gates.iter().cloned());
    for _ in 0..2 * n + v.len() {
        gates.push(Gate::identity(0));
    }
    let width = w0 + 4 * n;
    let regs = Registers {
        proof: v.registers.proof.clone(),
        ancilla: v.registers.ancilla.start..width,
        output: v.registers.output,
    };
    let tp = gates.len();
    let layout = GseLayout {
        b: v.registers.proof.clone(),
        c: v.registers.ancilla.clone(),
        e,
        e2,
        f,
        f2,
        d: width..width + tp,
    };
    Ok((QuantumCircuit::new(width, regs, gates)?, layout))
}

#[derive(Clone, Debug, Default)]
pub struct GseOptions {
    pub mu: Option<f64>,
    pub epsilon: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GseInstance {
    pub hamiltonian: Vec<LocalTerm>,
    pub kitaev: KitaevHamiltonian,
    pub w: QuantumCircuit,
    pub layout: GseLayout,
    /// Qubits of `A = E u F`.
    pub partition_a: Vec<usize>,
    pub eta: [f64; 4],
    pub mu: f64,
    /// Gate count of `W`, `T' = 4n + 2T`.
    pub t_prime: usize,
    pub n_qubits: usize,
    pub n: usize,
    pub g: usize,
    pub gprime: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
}

pub fn compile_gse(q: &QmsaInstance, opts: &GseOptions) -> Result<GseInstance> {
    let v = q.verifier()?;
    let (w, layout) = build_w_circuit(&v)?;
    let kit = compile_kitaev(&w)?;
    let tp = w.len();
    let eps = match opts.epsilon {
        Some(e) => e,
        None => q.epsilon()?,
    };
    let bounds = lemma1_bounds(tp, eps)?;
    let mu = opts.mu.unwrap_or(bounds.mu);
    if mu <= 0.0 {
        return Err(Error::Domain("mu must be positive".into()));
    }
    let n_qubits = kit.n_qubits;
    let mut partition_a: Vec<usize> = layout.e.clone().collect();
    partition_a.extend(layout.f.clone());
    let eta = [
        bounds.alpha,
        bounds.beta / (2.0 * (n_qubits as f64).powi(3)),
        q.g as f64 + 1.0,
        (q.gprime as f64 - 3.0) / 4.0,
    ];
    Ok(GseInstance {
        hamiltonian: kit.scaled(mu),
        kitaev: kit,
        n: v.proof_len(),
        w,
        layout,
        partition_a,
        eta,
        mu,
        t_prime: tp,
        n_qubits,
        g: q.g,
        gprime: q.gprime,
        epsilon: eps,
        alpha: bounds.alpha,
        beta: bounds.beta,
    })
}

impl GseInstance {
    /// History state of `W` on `proof`, over all `n_qubits`.
    pub fn history_state(&self, proof: &ProofInput) -> Result<Vec<C64>> {
        kitaev::history_state(&self.w, proof)
    }

    /// Entanglement of a state across `A = E u F`.
    pub fn entanglement(&self, state: &[C64]) -> Result<Entanglement> {
        entanglement_entropy(state, &self.partition_a)
    }

    /// `sum_t |a_{t,p,p,x}|^2`: weight of `|p>_E |p>_E' |x>_F |x>_F'` summed
    /// over the `T' + 1` snapshots of `W` run on proof `p`.
    pub fn time_summed_weight(&self, p: &[bool], x: &[bool]) -> Result<f64> {
        if p.len() != self.n || x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.len().min(x.len()),
            });
        }
        let steps = circuit::simulate_steps(
            &self.w,
            &ProofInput::Basis(p.to_vec()),
            circuit::DEFAULT_QUBIT_LIMIT,
        )?;
        let l = &self.layout;
        let mut mask = 0usize;
        let mut want = 0usize;
        for i in 0..self.n {
            for (q, bit) in [
                (l.e.start + i, p[i]),
                (l.e2.start + i, p[i]),
                (l.f.start + i, x[i]),
                (l.f2.start + i, x[i]),
            ] {
                mask |= 1 << q;
                if bit {
                    want |= 1 << q;
                }
            }
        }
        Ok(steps
            .iter()
            .map(|st| {
                st.iter()
                    .enumerate()
                    .filter(|(i, _)| i & mask == want)
                    .map(|(_, a)| a.norm_sqr())
                    .sum::<f64>()
            })
            .sum())
    }
}

/// `M_p = { x <= p : x_j = 1 }` with `j` the last index where `p` is 1.
pub fn m_set(p: &[bool]) -> Vec<Vec<bool>> {
    let Some(j) = p.iter().rposition(|&b| b) else {
        return Vec::new();
    };
    let ones: Vec<usize> = (0..p.len()).filter(|&i| p[i] && i != j).collect();
    (0..1usize << ones.len())
        .map(|mask| {
            let mut x = vec![false; p.len()];
            x[j] = true;
            for (k, &i) in ones.iter().enumerate() {
                x[i] = (mask >> k) & 1 == 1;
            }
            x
        })
        .collect()
}
