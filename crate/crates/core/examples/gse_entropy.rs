//! Entanglement of GSE history states across the E|F cut, and the
//! time-summed amplitudes that force entropy on heavy proofs.

use qreduce::circuit::{Gate, QmsaInstance, QuantumCircuit};
use qreduce::gse::{compile_gse, m_set, GseOptions};

fn main() -> qreduce::Result<()> {
    let v = QuantumCircuit::standard(1, 1, vec![Gate::cnot(0, 1)])?;
    let inst = compile_gse(&QmsaInstance::new(v, 1, 1)?, &GseOptions::default())?;
    println!(
        "n=1 instance: {} qubits, T' = {}, cut A = {:?}",
        inst.n_qubits, inst.t_prime, inst.partition_a
    );
    for p in [false, true] {
        let psi = inst.history_state(&vec![p].into())?;
        let e = inst.entanglement(&psi)?;
        println!(
            "  proof {}: entropy {:.4} bits, Schmidt rank {}",
            p as u8, e.entropy, e.schmidt_rank
        );
    }

    let v = QuantumCircuit::standard(2, 1, vec![Gate::cnot(0, 2), Gate::cnot(1, 2)])?;
    let inst = compile_gse(&QmsaInstance::new(v, 1, 2)?, &GseOptions::default())?;
    let tp = inst.t_prime as f64;
    println!("n=2 instance: T' = {}", inst.t_prime);
    for p in [[true, false], [false, true], [true, true]] {
        let hw = p.iter().filter(|&&b| b).count() as i32;
        for x in m_set(&p) {
            let s = inst.time_summed_weight(&p, &x)?;
            println!(
                "  p={p:?} x={x:?}: {:.4} <= {s:.4} <= {:.4}",
                tp / 2f64.powi(hw + 1),
                tp / 2f64.powi(hw)
            );
        }
    }
    Ok(())
}
