//! Exhaustive search over classical X / XX moves on compiled GSCON
//! instances, compared with the g'|W| lower bound.

use qreduce::circuit::{Gate, QmsaInstance, QuantumCircuit};
use qreduce::classical::{xflip_lower_bound, xflip_search};
use qreduce::gscon::{compile_gscon, GsconOptions};

fn main() -> qreduce::Result<()> {
    let cases = [
        ("copy n=1", 1, vec![Gate::cnot(0, 1)], 1, 1),
        ("accept-all n=1", 1, vec![Gate::x(1)], 0, 1),
        ("copy n=2", 2, vec![Gate::cnot(0, 2)], 1, 2),
    ];
    for (name, n, gates, g, gp) in cases {
        let q = QmsaInstance::new(QuantumCircuit::standard(n, 1, gates)?, g, gp)?;
        let inst = compile_gscon(&q, &GsconOptions::default())?;
        let r = xflip_lower_bound(&inst, 10_000_000)?;
        let clock = xflip_search(&inst, 0, 10_000_000)?;
        println!(
            "{name:<15} |W|={:<3} min gates {:?} (bound {}), clock only {:?}, expanded {}",
            inst.w_len(),
            r.min_gates,
            r.bound,
            clock.min_gates,
            r.expanded
        );
    }
    Ok(())
}
