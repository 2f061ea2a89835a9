use super::*;
use crate::verify::{basis_state, expectation, verify_gscon_path, PathOptions};

fn copy_instance() -> GsconInstance {
    let v = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)]).unwrap();
    let q = QmsaInstance::new(v, 1, 1).unwrap();
    compile_gscon(&q, &GsconOptions::default()).unwrap()
}

fn accept_all_instance() -> GsconInstance {
    let v = QuantumCircuit::standard(1, 1, vec![Gate::x(1)]).unwrap();
    let q = QmsaInstance::new(v, 0, 1).unwrap();
    compile_gscon(&q, &GsconOptions::default()).unwrap()
}

fn count(inst: &GsconInstance, label: &str) -> usize {
    inst.hamiltonian
        .iter()
        .filter(|t| t.label.as_deref() == Some(label))
        .count()
}

#[test]
fn timestep_examples() {
    let t0 = timestep_pattern(0, 3).unwrap();
    assert!(t0.k.iter().all(|&b| !b) && t0.l == [false, false]);
    let t1 = timestep_pattern(1, 3).unwrap();
    assert!(t1.k[0] && t1.k[1..].iter().all(|&b| !b) && t1.l == [true, false]);
    let t4 = timestep_pattern(4, 1).unwrap();
    assert_eq!(t4.k, vec![true; 4]);
    assert_eq!(t4.l, [false, false]);
    assert!(matches!(timestep_pattern(5, 1), Err(Error::Domain(_))));
}

#[test]
fn timestep_distances() {
    let n = 3;
    for i in 0..=4 * n {
        for j in i + 1..=4 * n {
            let a = timestep_pattern(i, n).unwrap().bits();
            let b = timestep_pattern(j, n).unwrap().bits();
            let d = a.iter().zip(&b).filter(|(x, y)| x != y).count();
            let gap = j - i;
            let dl = match gap % 4 {
                0 => 0,
                2 => 2,
                _ => 1,
            };
            assert_eq!(d, gap + dl);
            if gap == 1 {
                assert_eq!(d, 2);
            }
            if gap % 4 != 0 {
                assert!(d > gap);
            }
        }
    }
}

#[test]
fn layout_and_thresholds() {
    let inst = copy_instance();
    assert_eq!(inst.w_len(), 6);
    assert_eq!(inst.n_qubits, 20);
    let r = &inst.registers;
    assert_eq!(r.k.len(), 4);
    assert_eq!(r.l.len(), 2);
    assert_eq!(r.m.len(), inst.w_len());
    // spans are disjoint and exhaustive
    let mut cover = vec![0; inst.n_qubits];
    for (_, span) in r.named() {
        for q in span {
            cover[q] += 1;
        }
    }
    assert!(cover.iter().all(|&c| c == 1));
    assert_eq!(inst.m, 2 * (2 + 6 + 8 + 6 + 1));
    assert_eq!(inst.mprime, 3);
    let b = lemma1_bounds(1, 0.0).unwrap();
    assert_eq!(inst.eta[0], b.alpha);
    assert_eq!(inst.eta[2], 0.0);
    assert_eq!(inst.eta[3], 0.25);
    assert!(
        (inst.mu - 32.0 * std::f64::consts::PI.powi(4) / b.beta.powi(2)).abs() < 1e-6 * inst.mu
    );
    let mp = 3.0f64;
    assert_eq!(
        inst.eta[1],
        (1.0 / mp.powi(13)).min(b.beta / (6.0 * 64.0 * mp * mp))
    );
}

#[test]
fn class_term_counts() {
    let inst = copy_instance();
    let (n, w) = (1, 6);
    assert_eq!(count(&inst, "a"), 4 * n - 1);
    assert_eq!(count(&inst, "b"), 4 * n + 1);
    assert_eq!(count(&inst, "c"), 2 * (w - 1));
    assert_eq!(count(&inst, "d"), n);
    assert_eq!(count(&inst, "e"), n);
    assert_eq!(count(&inst, "f"), 2 * n);
    assert_eq!(count(&inst, "go"), 1);
    assert!(inst.hamiltonian.iter().all(|t| t.locality() <= 9));
}

#[test]
fn start_and_target_have_zero_energy() {
    for inst in [copy_instance(), accept_all_instance()] {
        assert_eq!(
            expectation(&inst.hamiltonian, &basis_state(&inst.start)).unwrap(),
            0.0
        );
        assert_eq!(
            expectation(&inst.hamiltonian, &basis_state(&inst.target)).unwrap(),
            0.0
        );
    }
}

/// Oracle: a basis state on B,F,G,K,L,M at a valid timestep is free of every
/// amp term exactly when the block-wise consistency rules hold.
#[test]
fn valid_clock_states_are_free() {
    let inst = copy_instance();
    let r = inst.registers.clone();
    for i in 0..=4 {
        let ts = timestep_pattern(i, 1).unwrap();
        for b in [false, true] {
            // B, F, G equal; M = B only in the middle of the block, else 0
            let m_on = b && (i == 1 || i == 2);
            let mut bits = vec![false; inst.n_qubits];
            for (k, &v) in ts.k.iter().enumerate() {
                bits[r.k.start + k] = v;
            }
            bits[r.l.start] = ts.l[0];
            bits[r.l.start + 1] = ts.l[1];
            if i >= 1 || b {
                bits[r.b.start] = b;
                bits[r.f.start] = b;
                bits[r.g.start] = b;
            }
            for q in r.m.clone() {
                bits[q] = m_on;
            }
            let e = expectation(&inst.hamiltonian, &basis_state(&bits)).unwrap();
            assert_eq!(e, 0.0, "timestep {i}, b={b}");
        }
    }
    // an invalid L at t_1 is penalised
    let mut bits = vec![false; inst.n_qubits];
    bits[r.k.start] = true;
    assert!(expectation(&inst.hamiltonian, &basis_state(&bits)).unwrap() >= 1.0);
}

#[test]
fn honest_path_for_accepted_proof() {
    let inst = copy_instance();
    let path = honest_gscon_path(&inst, &[true]).unwrap();
    assert_eq!(path.len(), honest_path_length(1, 1, 6));
    assert_eq!(path.len(), 38);
    assert!(path.len() <= inst.m);
    assert!(path.iter().all(|g| g.arity() <= 2));
    let v = verify_gscon_path(&inst, &path, &PathOptions::default()).unwrap();
    assert!(v.ok, "{v:?}");
    assert!(v.max_intermediate_energy <= 1e-8);
    assert!(v.final_distance <= 1e-8);
    assert!(v.traversal_max_overlap > 0.9);
}

#[test]
fn zero_proof_path_on_accept_all() {
    let inst = accept_all_instance();
    assert_eq!(inst.w_len(), 2);
    let path = honest_gscon_path(&inst, &[false]).unwrap();
    assert_eq!(path.len(), 2 * (4 + inst.w_len() + 1));
    let v = verify_gscon_path(&inst, &path, &PathOptions::default()).unwrap();
    assert!(v.ok);
}

#[test]
fn rejected_proof_path_fails_at_go_flip() {
    let inst = copy_instance();
    // weight-0 proof is rejected by the copy verifier
    let path = honest_gscon_path(&inst, &[false]).unwrap();
    let v = verify_gscon_path(&inst, &path, &PathOptions::default()).unwrap();
    assert!(!v.ok);
    // first violation right after X(x)X on E1 E2: 4n clock gates + |W| + 1
    assert_eq!(v.first_violation_index, Some(4 + 6 + 1));
    assert!((v.max_intermediate_energy - 0.5).abs() < 1e-9);
}

#[test]
fn rejects_bad_inputs() {
    let inst = copy_instance();
    assert!(matches!(
        honest_gscon_path(&inst, &[true, false]),
        Err(Error::DimensionMismatch { .. })
    ));
    let v = QuantumCircuit::standard(1, 1, vec![Gate::cnot(1, 0)]).unwrap();
    let q = QmsaInstance::new(v, 1, 1).unwrap();
    assert!(matches!(
        compile_gscon(&q, &GsconOptions::default()),
        Err(Error::InvalidCircuit(_))
    ));
    let v = QuantumCircuit::standard(0, 1, vec![Gate::x(0)]).unwrap();
    let q = QmsaInstance::new(v, 0, 0).unwrap();
    assert!(matches!(
        compile_gscon(&q, &GsconOptions::default()),
        Err(Error::Degenerate(_))
    ));
    let v = QuantumCircuit::standard(2, 1, vec![Gate::cnot(0, 2)]).unwrap();
    let q = QmsaInstance::new(v, 0, 1).unwrap();
    let inst = compile_gscon(&q, &GsconOptions::default()).unwrap();
    assert!(matches!(
        honest_gscon_path(&inst, &[true, false]),
        Err(Error::Precondition(_))
    ));
}
