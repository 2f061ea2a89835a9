//! Compile small verifiers to clock Hamiltonians and compare the ground
//! energy and penalty gap with the completeness/soundness thresholds.

use qreduce::circuit::{measured_epsilon, Gate, QuantumCircuit};
use qreduce::kitaev::{compile_kitaev, lemma1_bounds};
use qreduce::verify::{ground_energy, smallest_nonzero_eigenvalue, EigenOptions};

fn main() -> qreduce::Result<()> {
    let cases = [
        (
            "accept (X on output)",
            QuantumCircuit::standard(1, 1, vec![Gate::x(1)])?,
        ),
        (
            "noisy accept",
            QuantumCircuit::standard(1, 1, vec![Gate::ry(1, 2.8), Gate::cnot(0, 1)])?,
        ),
        (
            "reject, T=4",
            QuantumCircuit::standard(1, 1, vec![Gate::identity(1); 4])?,
        ),
        (
            "reject, T=6",
            QuantumCircuit::standard(1, 1, vec![Gate::identity(1); 6])?,
        ),
    ];
    println!(
        "{:<22} {:>3} {:>6} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "circuit", "T", "qubits", "eps", "ground", "alpha", "beta", "gap/bound"
    );
    for (name, c) in cases {
        let eps = measured_epsilon(&c)?;
        let kit = compile_kitaev(&c)?;
        let b = lemma1_bounds(kit.t(), eps)?;
        let e0 = ground_energy(&kit.terms(), kit.n_qubits, &EigenOptions::default())?.value;
        let gap = smallest_nonzero_eigenvalue(&kit.penalty_terms(), kit.n_qubits, 1e-9, 14)?;
        println!(
            "{name:<22} {:>3} {:>6} {eps:>12.4e} {e0:>12.4e} {:>12.4e} {:>12.4e} {:>12.2}",
            kit.t(),
            kit.n_qubits,
            b.alpha,
            b.beta,
            gap / b.gap
        );
    }
    Ok(())
}
