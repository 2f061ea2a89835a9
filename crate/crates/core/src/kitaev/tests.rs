use super::*;
use crate::circuit::{acceptance_probability, simulate, Gate};
use crate::linalg::ry;
use crate::verify::{expectation, ground_energy, EigenOptions, SolveMode};
use proptest::prelude::*;

fn dense() -> EigenOptions {
    EigenOptions {
        mode: SolveMode::Dense,
        dense_limit: 12,
        ..Default::default()
    }
}

fn identity_rejecter(t: usize) -> QuantumCircuit {
    QuantumCircuit::standard(1, 1, (0..t).map(|_| Gate::identity(0)).collect()).unwrap()
}

#[test]
fn term_counts_follow_layout() {
    let c = QuantumCircuit::standard(1, 2, vec![Gate::x(1), Gate::h(2), Gate::cnot(0, 2)]).unwrap();
    let h = compile_kitaev(&c).unwrap();
    assert_eq!(h.input.len(), 2);
    assert_eq!(h.prop.len(), 3);
    assert_eq!(h.output.len(), 1);
    assert_eq!(h.stab.len(), 2);
    assert_eq!(h.n_qubits, 6);
    for t in h.terms() {
        t.check().unwrap();
        let (vals, _) = linalg::hermitian_eigen(&t.block);
        assert!(vals[0] > -1e-12, "negative eigenvalue in {:?}", t.tag);
        assert!(t.block_norm() <= 1.0 + 1e-12);
        let clock_part = t.support.iter().filter(|&&q| h.clock.contains(&q)).count();
        assert!(clock_part <= 3 && t.support.len() - clock_part <= 3);
    }
}

#[test]
fn history_state_is_annihilated_by_penalties() {
    let c = QuantumCircuit::standard(
        2,
        2,
        vec![
            Gate::h(2),
            Gate::cnot(0, 3),
            Gate::ry(2, 0.7),
            Gate::cnot(1, 2),
        ],
    )
    .unwrap();
    let h = compile_kitaev(&c).unwrap();
    for x in 0..4usize {
        let bits = vec![x & 1 == 1, x & 2 == 2];
        let psi = history_state(&c, &bits.clone().into()).unwrap();
        assert!(expectation(&h.penalty_terms(), &psi).unwrap().abs() < 1e-12);
        let reject = 1.0 - acceptance_probability(&c, &bits.into()).unwrap();
        let e_out = expectation(&h.output, &psi).unwrap();
        assert!((e_out - reject / 5.0).abs() < 1e-12);
    }
}

#[test]
fn accepting_x_gate_has_zero_ground_energy() {
    let c = QuantumCircuit::standard(1, 1, vec![Gate::x(1)]).unwrap();
    let h = compile_kitaev(&c).unwrap();
    let b = lemma1_bounds(1, 0.0).unwrap();
    let g = ground_energy(&h.terms(), h.n_qubits, &dense()).unwrap();
    assert!(g.value <= b.alpha + 1e-10);
}

#[test]
fn single_step_rejecter_matches_two_level_oracle() {
    // identity verifier with T = 1: on the rejecting sector the clock sees
    // [[1/2, -1/2], [-1/2, 3/2]], lowest eigenvalue 1 - 1/sqrt 2
    let m: [[f64; 2]; 2] = [[0.5, -0.5], [-0.5, 1.5]];
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let oracle = tr / 2.0 - (tr * tr / 4.0 - det).sqrt();
    let h = compile_kitaev(&identity_rejecter(1)).unwrap();
    let g = ground_energy(&h.terms(), h.n_qubits, &dense()).unwrap();
    assert!((g.value - oracle).abs() < 1e-10);
    assert!((oracle - (1.0 - std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-12);
    // the printed soundness floor pi^2/16 sits above this value
    let b = lemma1_bounds(1, 0.0).unwrap();
    assert!((b.beta - std::f64::consts::PI.powi(2) / 16.0).abs() < 1e-12);
    assert!(g.value < b.beta);
}

#[test]
fn soundness_floor_holds_from_four_steps() {
    for t in 4..=6 {
        let h = compile_kitaev(&identity_rejecter(t)).unwrap();
        let g = ground_energy(&h.terms(), h.n_qubits, &dense()).unwrap();
        let b = lemma1_bounds(t, 0.0).unwrap();
        assert!(g.value >= b.beta - 1e-8, "T={t}: {} < {}", g.value, b.beta);
    }
}

#[test]
fn empty_circuit_is_padded() {
    let c = QuantumCircuit::standard(1, 1, vec![]).unwrap();
    let h = compile_kitaev(&c).unwrap();
    assert!(h.padded);
    assert_eq!(h.t(), 1);
}

#[test]
fn bounds_reject_bad_inputs() {
    assert!(matches!(lemma1_bounds(0, 0.1), Err(Error::Domain(_))));
    assert!(matches!(lemma1_bounds(3, 1.5), Err(Error::Domain(_))));
    let b = lemma1_bounds(3, 0.04).unwrap();
    assert!((b.alpha - 0.01).abs() < 1e-15);
    assert!((b.mu - 32.0 * PI.powi(4) / b.beta.powi(2)).abs() < 1e-6 * b.mu);
}

fn prep_matches_history(c: &QuantumCircuit) {
    let w = history_prep_circuit(c).unwrap();
    assert!(w.gates.iter().all(|g| g.arity() <= 2));
    assert!(w.len() <= HISTORY_PREP_COST * c.len().max(1));
    let n = c.proof_len();
    for x in 0..1usize << n {
        let bits: Vec<bool> = (0..n).map(|i| (x >> i) & 1 == 1).collect();
        let target = history_state(c, &bits.clone().into()).unwrap();
        let got = simulate(&w, &bits.into()).unwrap();
        let d = linalg::distance(&target, &got);
        assert!(d < 1e-9, "distance {d}");
    }
}

#[test]
fn prep_circuit_for_copy_verifier() {
    let c = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)]).unwrap();
    prep_matches_history(&c);
    assert_eq!(history_prep_circuit(&c).unwrap().len(), 6);
}

#[test]
fn prep_rejects_three_qubit_gates() {
    let c = QuantumCircuit::standard(2, 1, vec![Gate::toffoli(0, 1, 2)]).unwrap();
    assert!(matches!(
        history_prep_circuit(&c),
        Err(Error::Unsupported(_))
    ));
}

fn random_two_qubit(seed: u64) -> CMat {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a = CMat::from_fn(4, 4, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    a.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn prep_circuit_reproduces_history(kinds in proptest::collection::vec((0..5usize, 0..3usize, 0..3usize, 0u64..1000), 1..5)) {
        let mut gates = Vec::new();
        for (k, a, b, seed) in kinds {
            let b = if a == b { (a + 1) % 3 } else { b };
            gates.push(match k {
                0 => Gate::ry(a, seed as f64 * 0.01),
                1 => Gate::cnot(a, b),
                2 => Gate::controlled(a, seed % 2 == 0, b, &ry(seed as f64 * 0.003)),
                3 => Gate::identity(a),
                _ => Gate::new(vec![a, b], random_two_qubit(seed)).unwrap(),
            });
        }
        let c = QuantumCircuit::standard(1, 2, gates).unwrap();
        prep_matches_history(&c);
    }
}
