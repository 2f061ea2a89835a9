use super::*;
use crate::classical::{bfs_shortest_path, validate_br_path};
use crate::monotone::{BoolGate, MonotoneCircuit};

fn bits(x: usize, k: usize) -> Vec<bool> {
    (0..k).map(|i| (x >> i) & 1 == 1).collect()
}

fn or2() -> MonotoneCircuit {
    MonotoneCircuit::new(
        2,
        vec![BoolGate {
            kind: GateKind::Or,
            inputs: vec![0, 1],
            out: 2,
        }],
    )
    .unwrap()
}

fn sat(cl: &[Clause], a: &[bool]) -> bool {
    cl.iter().all(|c| c.satisfied_by(a))
}

#[test]
fn gadgets_are_exact() {
    for kind in [GateKind::Not, GateKind::And, GateKind::Or] {
        let k = kind.arity();
        let ins: Vec<usize> = (0..k).collect();
        let cl = gate_gadget(kind, &ins, k, None, OrStyle::Corrected);
        for x in 0..1usize << (k + 1) {
            let a = bits(x, k + 1);
            let f = match kind {
                GateKind::Not => !a[0],
                GateKind::And => a[0] && a[1],
                GateKind::Or => a[0] || a[1],
            };
            assert_eq!(sat(&cl, &a), a[k] == f, "{kind} at {a:?}");
        }
    }
}

#[test]
fn printed_or_forces_output() {
    let cl = gate_gadget(GateKind::Or, &[0, 1], 2, None, OrStyle::Printed);
    assert!(!sat(&cl, &[false, false, false]));
    assert!(sat(&cl, &[false, false, true]));
}

#[test]
fn gating_disables_gadget() {
    let cl = gate_gadget(GateKind::Not, &[0], 1, Some(2), OrStyle::Corrected);
    for x in 0..4 {
        let mut a = bits(x, 2);
        a.push(false);
        assert!(sat(&cl, &a));
    }
}

#[test]
fn go_gadget() {
    let cl = go_clauses([0, 1, 2]);
    for x in 0..8 {
        let a = bits(x, 3);
        let expect = a[0] || a[1] == a[2];
        assert_eq!(sat(&cl, &a), expect);
    }
}

#[test]
fn clock_states_are_steps_and_half_steps() {
    for n in 1..=2 {
        let lay = BrLayout::new(n, 1);
        let cl = clock_clauses(&lay, n);
        let w = 4 * n + 2;
        let mut expected = std::collections::BTreeSet::new();
        for j in 0..=4 * n {
            for l in allowed_l(j) {
                let mut v: Vec<bool> = (1..=4 * n).map(|i| i <= j).collect();
                v.extend(l);
                expected.insert(v);
            }
        }
        let mut found = std::collections::BTreeSet::new();
        let mut a = vec![false; lay.total()];
        for x in 0..1usize << w {
            let b = bits(x, w);
            for (i, q) in lay.k.clone().chain(lay.l.clone()).enumerate() {
                a[q] = b[i];
            }
            if sat(&cl, &a) {
                found.insert(b);
            }
        }
        assert_eq!(found, expected);
        assert_eq!(found.len(), 8 * n + 1);
    }
}

#[test]
fn or_thresholds() {
    let q = MmsaInstance::new(or2(), 1, 2).unwrap();
    let inst = compile_br(&q, &BrOptions::default()).unwrap();
    assert_eq!(inst.h, 54);
    assert_eq!(inst.hprime, 6);
    assert_eq!(inst.formula.n_vars, 23);
    assert!(inst.formula.max_width() <= 7);
    assert!(inst.formula.eval(&inst.start));
    assert!(inst.formula.eval(&inst.target));
    assert_eq!(inst.roles.len(), 23);
    assert_eq!(BrLayout::from_roles(&inst.roles).unwrap(), inst.layout);
}

#[test]
fn honest_path_validates() {
    let q = MmsaInstance::new(or2(), 1, 2).unwrap();
    let inst = compile_br(&q, &BrOptions::default()).unwrap();
    let path = honest_br_path(&inst, &q.circuit, &[true, false]).unwrap();
    assert_eq!(path.len(), honest_br_length(2, 1, 1, 1));
    assert_eq!(path.len(), 56);
    let v = validate_br_path(&inst, &path);
    assert!(v.ok, "{v:?}");
    // reversed path from target back to start
    let mut back = inst.clone();
    std::mem::swap(&mut back.start, &mut back.target);
    let rev: Vec<usize> = path.iter().rev().copied().collect();
    assert!(validate_br_path(&back, &rev).ok);
    assert!(matches!(
        honest_br_path(&inst, &q.circuit, &[false, false]),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        honest_br_path(&inst, &q.circuit, &[true, true]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn single_e2_flip_is_rejected() {
    let q = MmsaInstance::new(or2(), 1, 2).unwrap();
    let inst = compile_br(&q, &BrOptions::default()).unwrap();
    let v = validate_br_path(&inst, &[inst.layout.e_(2)]);
    assert!(!v.ok);
    assert_eq!(v.first_violation, Some(1));
    let mut same = inst.clone();
    same.target = same.start.clone();
    let v = validate_br_path(&same, &[]);
    assert!(v.ok && v.length == 0);
}

#[test]
fn small_bfs_matches_honest_length() {
    // NOT(x1): accepted by x1 = 0
    let c = MonotoneCircuit::new(
        1,
        vec![BoolGate {
            kind: GateKind::Not,
            inputs: vec![0],
            out: 1,
        }],
    )
    .unwrap();
    let q = MmsaInstance::new(c.clone(), 0, 1).unwrap();
    let inst = compile_br(&q, &BrOptions::default()).unwrap();
    let path = honest_br_path(&inst, &c, &[false]).unwrap();
    assert_eq!(path.len(), honest_br_length(1, 1, 0, 1));
    assert!(validate_br_path(&inst, &path).ok);
    let r = bfs_shortest_path(&inst.formula, &inst.start, &inst.target, 1 << 22).unwrap();
    assert!(r.length().unwrap() <= path.len());
}
