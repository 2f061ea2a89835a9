//! Succinct ground-state connectivity instances from QMSA verifiers.
//!
//! Registers, in qubit order: `B` (proof), `C` (ancilla), `D` (clock), `E` (3
//! qubits), `F`, `G` (n each), `K` (4n), `L` (2), `M` (|W|). The KL pair is a
//! second clock whose timestep `t_i` has `K = 1^i 0^(4n-i)` and `L` cycling
//! through 00, 10, 11, 01.

use std::ops::Range;

use crate::circuit::{Gate, QmsaInstance, QuantumCircuit};
use crate::error::{Error, Result};
use crate::hamiltonian::{LocalTerm, TermTag};
use crate::kitaev::{compile_kitaev, history_prep_circuit, lemma1_bounds};
use crate::linalg::{self, CMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GsconRegisters {
    pub b: Range<usize>,
    pub c: Range<usize>,
    pub d: Range<usize>,
    pub e: Range<usize>,
    pub f: Range<usize>,
    pub g: Range<usize>,
    pub k: Range<usize>,
    pub l: Range<usize>,
    pub m: Range<usize>,
}

impl GsconRegisters {
    pub fn total(&self) -> usize {
        self.m.end
    }

    /// `(name, range)` for every register, in qubit order.
    pub fn named(&self) -> Vec<(&'static str, Range<usize>)> {
        vec![
            ("B", self.b.clone()),
            ("C", self.c.clone()),
            ("D", self.d.clone()),
            ("E", self.e.clone()),
            ("F", self.f.clone()),
            ("G", self.g.clone()),
            ("K", self.k.clone()),
            ("L", self.l.clone()),
            ("M", self.m.clone()),
        ]
    }

    fn at(r: &Range<usize>, i: usize) -> usize {
        debug_assert!(i >= 1 && r.start + i - 1 < r.end);
        r.start + i - 1
    }

    /// 1-based accessors.
    pub fn b_(&self, i: usize) -> usize {
        Self::at(&self.b, i)
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
    pub fn m_(&self, i: usize) -> usize {
        Self::at(&self.m, i)
    }
}

/// `L(i)` as `(l1, l2)`.
pub fn l_pattern(i: usize) -> [bool; 2] {
    match i % 4 {
        0 => [false, false],
        1 => [true, false],
        2 => [true, true],
        _ => [false, true],
    }
}

/// Which L bit (0 or 1) changes between `L(i-1)` and `L(i)`.
pub fn l_flip_bit(i: usize) -> usize {
    if i % 2 == 1 {
        0
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Timestep {
    pub index: usize,
    pub k: Vec<bool>,
    pub l: [bool; 2],
}

impl Timestep {
    /// `K` bits followed by `L` bits.
    pub fn bits(&self) -> Vec<bool> {
        let mut v = self.k.clone();
        v.extend_from_slice(&self.l);
        v
    }
}

/// Timestep `t_i` of the KL clock for a proof of length `n`.
pub fn timestep_pattern(i: usize, n: usize) -> Result<Timestep> {
    if i > 4 * n {
        return Err(Error::Domain(format!("timestep {i} outside 0..={}", 4 * n)));
    }
    Ok(Timestep {
        index: i,
        k: (1..=4 * n).map(|j| j <= i).collect(),
        l: l_pattern(i),
    })
}

#[derive(Clone, Debug, Default)]
pub struct GsconOptions {
    /// Override of the penalty scale on `H_in + H_prop + H_stab`.
    pub mu: Option<f64>,
    /// Override of the measured verifier error.
    pub epsilon: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GsconInstance {
    pub hamiltonian: Vec<LocalTerm>,
    pub registers: GsconRegisters,
    pub n_qubits: usize,
    pub start: Vec<bool>,
    pub target: Vec<bool>,
    /// Allowed path length.
    pub m: usize,
    /// Lower bound on NO-instance path length.
    pub mprime: usize,
    pub eta: [f64; 4],
    pub mu: f64,
    pub n: usize,
    pub g: usize,
    pub gprime: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Clock length of the compiled verifier.
    pub kitaev_t: usize,
    /// The history-state preparation circuit `W` on `B`, `C`, `D`.
    pub prep: QuantumCircuit,
}

impl GsconInstance {
    pub fn w_len(&self) -> usize {
        self.prep.len()
    }

    /// Terms whose tag is `Amp` or `Gated` (all diagonal).
    pub fn diagonal_terms(&self) -> Vec<&LocalTerm> {
        self.hamiltonian
            .iter()
            .filter(|t| matches!(t.tag, TermTag::Amp | TermTag::Gated))
            .collect()
    }
}

fn p(bits: &[bool]) -> CMat {
    linalg::projector(bits)
}

fn not_p(bits: &[bool]) -> CMat {
    linalg::complement(&[bits])
}

/// `P = I - |000><000| - |111><111|`.
pub fn e_projector() -> CMat {
    linalg::complement(&[&[false; 3], &[true; 3]])
}

fn amp(support: Vec<usize>, block: CMat, label: &str) -> LocalTerm {
    LocalTerm::new(support, block, TermTag::Amp).labelled(label)
}

const O: bool = false;
const I: bool = true;

/// Compile a QMSA instance. The verifier must leave the proof register's
/// computational-basis value unchanged and act on at most two qubits per gate.
pub fn compile_gscon(q: &QmsaInstance, opts: &GsconOptions) -> Result<GsconInstance> {
    let v = q.verifier()?;
    let n = v.proof_len();
    if n == 0 {
        return Err(Error::Degenerate("proof register is empty".into()));
    }
    if v.registers.proof.start != 0 {
        return Err(Error::InvalidCircuit(
            "proof register must come first".into(),
        ));
    }
    if !v.preserves_proof_basis() {
        return Err(Error::InvalidCircuit(
            "verifier changes the computational-basis value of a proof qubit".into(),
        ));
    }
    let kit = compile_kitaev(&v)?;
    let prep = history_prep_circuit(&v)?;
    let t = kit.t();
    let w = prep.len();
    let eps = match opts.epsilon {
        Some(e) => e,
        None => q.epsilon()?,
    };
    let bounds = lemma1_bounds(t, eps)?;
    let mu = opts.mu.unwrap_or(bounds.mu);
    if mu <= 0.0 {
        return Err(Error::Domain("mu must be positive".into()));
    }

    let base = kit.n_qubits;
    let regs = GsconRegisters {
        b: v.registers.proof.clone(),
        c: v.registers.ancilla.clone(),
        d: kit.clock.clone(),
        e: base..base + 3,
        f: base + 3..base + 3 + n,
        g: base + 3 + n..base + 3 + 2 * n,
        k: base + 3 + 2 * n..base + 3 + 6 * n,
        l: base + 3 + 6 * n..base + 5 + 6 * n,
        m: base + 5 + 6 * n..base + 5 + 6 * n + w,
    };
    let e_sup: Vec<usize> = regs.e.clone().collect();
    let pe = e_projector();

    let mut terms = Vec::new();
    for term in kit.penalty_terms() {
        terms.push(term.tensor(&e_sup, &pe).with_coeff(mu));
    }
    for term in &kit.output {
        terms.push(term.tensor(&e_sup, &pe));
    }
    let mut go_sup = e_sup.clone();
    go_sup.push(regs.k_(4 * n));
    terms.push(LocalTerm::new(go_sup, linalg::kron(&pe, &p(&[O])), TermTag::Gated).labelled("go"));

    // (a) unary K
    for i in 1..4 * n {
        terms.push(amp(vec![regs.k_(i), regs.k_(i + 1)], p(&[O, I]), "a"));
    }

    // (b) L consistent with K
    let l_sup = [regs.l_(1), regs.l_(2)];
    let with_l = |ks: &[usize], kb: CMat, allowed: [bool; 2]| {
        let mut s = ks.to_vec();
        s.extend_from_slice(&l_sup);
        amp(s, linalg::kron(&kb, &not_p(&allowed)), "b")
    };
    terms.push(with_l(&[regs.k_(1)], p(&[O]), [O, O]));
    for i in 1..=n {
        let k = |j: usize| regs.k_(j);
        terms.push(with_l(&[k(4 * i - 3), k(4 * i - 2)], p(&[I, O]), [I, O]));
        terms.push(with_l(&[k(4 * i - 2), k(4 * i - 1)], p(&[I, O]), [I, I]));
        terms.push(with_l(&[k(4 * i - 1), k(4 * i)], p(&[I, O]), [O, I]));
        if i < n {
            terms.push(with_l(&[k(4 * i), k(4 * i + 1)], p(&[I, O]), [O, O]));
        }
    }
    terms.push(with_l(&[regs.k_(4 * n)], p(&[I]), [O, O]));

    // (c) M frozen while L is 10 or 01
    let neq = linalg::projector_sum(&[&[O, I], &[I, O]]);
    for pat in [[I, O], [O, I]] {
        for i in 1..w {
            terms.push(amp(
                vec![regs.m_(i), regs.m_(i + 1), l_sup[0], l_sup[1]],
                linalg::kron(&neq, &p(&pat)),
                "c",
            ));
        }
    }

    // (d) M cleared before the third step of each block
    for i in 1..=n {
        terms.push(amp(
            vec![regs.k_(4 * i - 1), regs.k_(4 * i), regs.m_(1)],
            linalg::kron(&p(&[I, O]), &p(&[I])),
            "d",
        ));
    }

    // (e) B, F, G agree once their block has started
    let neq3 = e_projector();
    terms.push(amp(
        vec![regs.b_(1), regs.f_(1), regs.g_(1), regs.k_(1), regs.k_(2)],
        linalg::kron(&neq3, &not_p(&[O, O])),
        "e",
    ));
    for i in 1..n {
        terms.push(amp(
            vec![
                regs.b_(i + 1),
                regs.f_(i + 1),
                regs.g_(i + 1),
                regs.k_(4 * i),
                regs.k_(4 * i + 1),
            ],
            linalg::kron(&neq3, &not_p(&[I, O])),
            "e",
        ));
    }

    // (f) M_1 copies B_{i+1} at the first step of block i+1
    for i in 0..n {
        let sup = vec![
            regs.k_(4 * i + 1),
            regs.k_(4 * i + 2),
            regs.b_(i + 1),
            regs.m_(1),
        ];
        for (bv, mv) in [(I, O), (O, I)] {
            terms.push(amp(
                sup.clone(),
                linalg::kron(&linalg::kron(&p(&[I, O]), &p(&[bv])), &p(&[mv])),
                "f",
            ));
        }
    }

    let total = regs.total();
    let start = vec![false; total];
    let mut target = vec![false; total];
    for q in regs.e.clone() {
        target[q] = true;
    }

    let g = q.g;
    let gp = q.gprime;
    let m = 2 * (2 * g + g * w + 8 * n + w + 1);
    let mprime = gp * w / 2;
    let mp = mprime.max(1) as f64;
    let eta2 = (1.0 / mp.powi(13)).min(bounds.beta / (6.0 * 64.0 * mp * mp));

    Ok(GsconInstance {
        hamiltonian: terms,
        n_qubits: total,
        registers: regs,
        start,
        target,
        m,
        mprime,
        eta: [bounds.alpha, eta2, 0.0, 0.25],
        mu,
        n,
        g,
        gprime: gp,
        epsilon: eps,
        alpha: bounds.alpha,
        beta: bounds.beta,
        kitaev_t: t,
        prep,
    })
}

/// Length of the path built by [`honest_gscon_path`] for a proof of weight `w`.
pub fn honest_path_length(n: usize, weight: usize, w_len: usize) -> usize {
    2 * (2 * weight + 2 * weight * w_len.div_ceil(2) + 4 * n + w_len) + 2
}

fn flip_m(regs: &GsconRegisters, out: &mut Vec<Gate>) {
    let ms: Vec<usize> = regs.m.clone().collect();
    for pair in ms.chunks(2) {
        out.push(match pair {
            [a, b] => Gate::xx(*a, *b),
            [a] => Gate::x(*a),
            _ => unreachable!(),
        });
    }
}

/// Gate sequence from `start` to `target` that writes the proof into `B`,
/// prepares the history state, toggles `E` to 111, and uncomputes.
pub fn honest_gscon_path(inst: &GsconInstance, proof: &[bool]) -> Result<Vec<Gate>> {
    let n = inst.n;
    if proof.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: proof.len(),
        });
    }
    let weight = proof.iter().filter(|&&b| b).count();
    if weight > inst.g {
        return Err(Error::Precondition(format!(
            "proof weight {weight} exceeds g = {}",
            inst.g
        )));
    }
    let r = &inst.registers;
    let advance = |j: usize| Gate::xx(r.k_(j), r.l_(1 + l_flip_bit(j)));
    let mut fwd = Vec::new();
    for (i, &bit) in proof.iter().enumerate() {
        let s = i + 1;
        if bit {
            fwd.push(Gate::xx(r.b_(s), r.f_(s)));
            fwd.push(Gate::x(r.g_(s)));
            flip_m(r, &mut fwd);
        }
        fwd.push(advance(4 * s - 3));
        fwd.push(advance(4 * s - 2));
        if bit {
            flip_m(r, &mut fwd);
        }
        fwd.push(advance(4 * s - 1));
        fwd.push(advance(4 * s));
    }
    let mut path = fwd.clone();
    path.extend(inst.prep.gates.iter().cloned());
    path.push(Gate::xx(r.e_(1), r.e_(2)));
    path.push(Gate::x(r.e_(3)));
    path.extend(inst.prep.gates.iter().rev().map(Gate::dagger));
    path.extend(fwd.iter().rev().map(Gate::dagger));
    Ok(path)
}

#[cfg(test)]
mod tests;
