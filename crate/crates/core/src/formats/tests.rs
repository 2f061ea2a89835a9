use super::*;
use crate::br::{compile_br, BrOptions};
use crate::circuit::QmsaInstance;
use crate::gscon::{compile_gscon, GsconOptions};
use crate::gse::{compile_gse, GseOptions};
use crate::kitaev::compile_kitaev;
use crate::monotone::{BoolGate, GateKind, MmsaInstance};

fn copy_verifier() -> QuantumCircuit {
    QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)]).unwrap()
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

fn reparse(d: &Document) -> Document {
    parse_document(&d.to_json().unwrap()).unwrap()
}

#[test]
fn circuit_round_trip() {
    let c = QuantumCircuit::standard(
        2,
        1,
        vec![Gate::ry(0, 0.3), Gate::toffoli(0, 1, 2), Gate::h(2)],
    )
    .unwrap();
    let d = Document::Circuit(CircuitDoc::from_circuit(&c));
    let Document::Circuit(back) = reparse(&d) else {
        panic!()
    };
    assert_eq!(back.to_circuit().unwrap(), c);
}

#[test]
fn named_gates_parse() {
    let text = r#"{"kind":"circuit","width":2,"registers":{"proof":{"start":0,"end":1},"ancilla":{"start":1,"end":2},"output":1},
        "gates":[{"name":"cnot","support":[0,1]},{"name":"RY","theta":0.5,"support":[1]}]}"#;
    let Document::Circuit(d) = parse_document(text).unwrap() else {
        panic!()
    };
    let c = d.to_circuit().unwrap();
    assert_eq!(c.gates[0], Gate::cnot(0, 1));
    assert_eq!(c.gates[1], Gate::ry(1, 0.5));
    let bad = text.replace("cnot", "swap");
    assert!(matches!(
        parse_document(&bad).and_then(|d| match d {
            Document::Circuit(c) => c.to_circuit().map(|_| ()),
            _ => Ok(()),
        }),
        Err(Error::Parse(_))
    ));
}

#[test]
fn monotone_and_hamiltonian_round_trip() {
    let d = Document::Monotone(or2());
    assert_eq!(reparse(&d), d);
    let k = compile_kitaev(&copy_verifier()).unwrap();
    let h = Document::Hamiltonian(HamiltonianDoc::new(k.n_qubits, &k.terms()));
    let Document::Hamiltonian(back) = reparse(&h) else {
        panic!()
    };
    assert_eq!(back.terms().unwrap(), k.terms());
}

#[test]
fn kitaev_round_trip() {
    let k = compile_kitaev(&copy_verifier()).unwrap();
    let Document::Kitaev(back) = reparse(&Document::Kitaev(KitaevDoc::from_kitaev(&k))) else {
        panic!()
    };
    assert_eq!(back.to_kitaev().unwrap(), k);
}

#[test]
fn gscon_round_trip() {
    let q = QmsaInstance::new(copy_verifier(), 1, 1).unwrap();
    let inst = compile_gscon(&q, &GsconOptions::default()).unwrap();
    let d = Document::Gscon(GsconDoc::from_instance(&inst, Some(&copy_verifier())));
    let Document::Gscon(back) = reparse(&d) else {
        panic!()
    };
    assert_eq!(back.to_instance().unwrap(), inst);
    assert_eq!(
        back.verifier.unwrap().to_circuit().unwrap(),
        copy_verifier()
    );
}

#[test]
fn gse_round_trip() {
    let q = QmsaInstance::new(copy_verifier(), 1, 1).unwrap();
    let inst = compile_gse(&q, &GseOptions::default()).unwrap();
    let d = Document::Gse(GseDoc::from_instance(&inst));
    let Document::Gse(back) = reparse(&d) else {
        panic!()
    };
    assert_eq!(back.to_instance().unwrap(), inst);
}

#[test]
fn br_json_and_dimacs_round_trip() {
    let q = MmsaInstance::new(or2(), 1, 2).unwrap();
    let inst = compile_br(&q, &BrOptions::default()).unwrap();
    let doc = BrDoc::from_instance(&inst, Some(&q.circuit));
    let Document::Br(back) = reparse(&Document::Br(doc.clone())) else {
        panic!()
    };
    assert_eq!(back.to_instance().unwrap(), inst);
    let text = write_dimacs(&doc).unwrap();
    assert!(text.contains("c h 54\n") && text.contains("c hprime 6\n"));
    let Document::Br(from_dimacs) = parse_document(&text).unwrap() else {
        panic!()
    };
    assert_eq!(from_dimacs, doc);
    assert_eq!(from_dimacs.to_instance().unwrap(), inst);
}

#[test]
fn plain_dimacs() {
    let d = parse_dimacs("c hello\np cnf 3 2\n1 -2 0\n3\n0\n").unwrap();
    assert_eq!(d.cnf.n_vars, 3);
    assert_eq!(d.cnf.clauses.len(), 2);
    assert_eq!(dimacs_body(&d.cnf), "p cnf 3 2\n1 -2 0\n3 0\n");
    assert!(matches!(
        parse_dimacs("p cnf 1 1\n2 0\n"),
        Err(Error::Parse(_))
    ));
    assert!(matches!(
        parse_dimacs("p cnf 1 2\n1 0\n"),
        Err(Error::Parse(_))
    ));
    assert!(matches!(parse_dimacs("1 0\n"), Err(Error::Parse(_))));
    assert!(matches!(d.to_br_doc(), Err(Error::Parse(_))));
}

#[test]
fn report_recomputes_ratios() {
    let mut last = 0.0;
    let mut last_size = 0;
    for n in 1..=3 {
        // OR chain over n+1 inputs, g = 1, g' = n + 1
        let mut gates = vec![BoolGate {
            kind: GateKind::Or,
            inputs: vec![0, 1],
            out: n + 1,
        }];
        for j in 1..n {
            gates.push(BoolGate {
                kind: GateKind::Or,
                inputs: vec![n + j, j + 1],
                out: n + 1 + j,
            });
        }
        let c = MonotoneCircuit::new(n + 1, gates).unwrap();
        let q = MmsaInstance::new(c, 1, n + 1).unwrap();
        let inst = compile_br(&q, &BrOptions::default()).unwrap();
        let doc = Document::Br(BrDoc::from_instance(&inst, None));
        let r = report_row("x", &reparse(&doc)).unwrap();
        assert_eq!(r.ratio, inst.hprime as f64 / inst.h as f64);
        assert!(r.ratio > last && r.n_prime > last_size);
        last = r.ratio;
        last_size = r.n_prime;
    }
    assert!(report_row("x", &Document::Monotone(or2())).is_err());
}
