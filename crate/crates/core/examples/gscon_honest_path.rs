//! Build the GSCON instance for a one-qubit copy verifier, generate the
//! honest unitary path for the accepted proof and audit it step by step.

use qreduce::circuit::{Gate, QmsaInstance, QuantumCircuit};
use qreduce::gscon::{compile_gscon, honest_gscon_path, GsconOptions};
use qreduce::verify::{verify_gscon_path, PathOptions};

fn main() -> qreduce::Result<()> {
    let v = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)])?;
    let q = QmsaInstance::new(v, 1, 1)?;
    let inst = compile_gscon(&q, &GsconOptions::default())?;
    println!(
        "qubits {}  terms {}  |W| {}",
        inst.n_qubits,
        inst.hamiltonian.len(),
        inst.w_len()
    );
    for (name, span) in inst.registers.named() {
        println!("  {name:<2} {span:?}");
    }
    println!("eta = {:?}", inst.eta);
    println!("m = {}, m' = {}", inst.m, inst.mprime);

    let path = honest_gscon_path(&inst, &[true])?;
    let verdict = verify_gscon_path(&inst, &path, &PathOptions::default())?;
    for (i, (g, e)) in path.iter().zip(&verdict.energies).enumerate().take(8) {
        println!(
            "  step {:>2}: gate on {:?}  energy {e:.2e}",
            i + 1,
            g.support
        );
    }
    println!("  ... {} steps in total", path.len());
    println!(
        "ok={} length={} allowed={} max energy={:.2e} final distance={:.2e}",
        verdict.ok,
        verdict.length,
        verdict.allowed_length,
        verdict.max_intermediate_energy,
        verdict.final_distance
    );
    Ok(())
}
