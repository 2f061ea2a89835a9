//! Encoding size N' against the YES/NO gap ratio for families of compiled
//! instances, as CSV.

use qreduce::br::{compile_br, BrOptions};
use qreduce::circuit::{Gate, QmsaInstance, QuantumCircuit};
use qreduce::formats::{report_row, BrDoc, Document, GsconDoc};
use qreduce::gscon::{compile_gscon, GsconOptions};
use qreduce::monotone::{BoolGate, GateKind, MmsaInstance, MonotoneCircuit};

fn or_chain(k: usize) -> qreduce::Result<MonotoneCircuit> {
    let mut gates = vec![BoolGate {
        kind: GateKind::Or,
        inputs: vec![0, 1],
        out: k,
    }];
    for j in 1..k - 1 {
        gates.push(BoolGate {
            kind: GateKind::Or,
            inputs: vec![k + j - 1, j + 1],
            out: k + j,
        });
    }
    MonotoneCircuit::new(k, gates)
}

fn main() -> qreduce::Result<()> {
    println!("source,kind,n_prime,ratio_name,numerator,denominator,ratio");
    let mut rows = Vec::new();
    for k in 2..=6 {
        let c = or_chain(k)?;
        let inst = compile_br(&MmsaInstance::new(c, 1, k)?, &BrOptions::default())?;
        rows.push(report_row(
            &format!("or-chain-{k}"),
            &Document::Br(BrDoc::from_instance(&inst, None)),
        )?);
    }
    for n in 1..=2 {
        let v = QuantumCircuit::standard(n, 1, vec![Gate::cnot(n - 1, n)])?;
        let inst = compile_gscon(&QmsaInstance::new(v, 1, n)?, &GsconOptions::default())?;
        rows.push(report_row(
            &format!("copy-{n}"),
            &Document::Gscon(GsconDoc::from_instance(&inst, None)),
        )?);
    }
    for r in rows {
        println!(
            "{},{},{},{},{},{},{:.5}",
            r.source, r.kind, r.n_prime, r.ratio_name, r.numerator, r.denominator, r.ratio
        );
    }
    Ok(())
}
