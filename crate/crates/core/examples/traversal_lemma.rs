//! Random 2-local paths from |000> to |111> must pass through the
//! penalised subspace; print the overlap against the lower bound.

use qreduce::circuit::{apply_gate, Gate};
use qreduce::linalg::{kron, pauli_x, random_unitary};
use qreduce::verify::{basis_state, traversal_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qreduce::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let xx = kron(&pauli_x(), &pauli_x());
    println!("{:>3} {:>12} {:>12} {:>6}", "m", "overlap", "bound", "k");
    for _ in 0..10 {
        let mut gates = Vec::new();
        for _ in 0..rng.gen_range(0..4) {
            let u = random_unitary(&mut rng, 4);
            let a = rng.gen_range(0..3);
            let b = (a + 1) % 3;
            gates.push(Gate::new(vec![a, b], u.clone())?);
            gates.push(Gate::new(vec![a, b], u.adjoint())?);
        }
        gates.push(Gate::new(vec![0, 1], xx.clone())?);
        gates.push(Gate::x(2));
        let mut v = basis_state(&[false; 3]);
        let mut states = vec![v.clone()];
        for g in &gates {
            apply_gate(&mut v, 3, g);
            states.push(v.clone());
        }
        let r = traversal_check(&states, &[0], &[7], 0.1)?;
        println!(
            "{:>3} {:>12.4} {:>12.6} {:>6}",
            gates.len(),
            r.max_overlap,
            r.bound,
            r.k_orthogonality
        );
        assert!(r.satisfied);
    }
    Ok(())
}
