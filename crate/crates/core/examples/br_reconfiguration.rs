//! Reduce a monotone OR circuit to Boolean reconfiguration, then compare the
//! honest flip sequence with the exact BFS distance and the thresholds.

use qreduce::br::{compile_br, honest_br_path, BrOptions};
use qreduce::classical::{bfs_with_witness, validate_br_path};
use qreduce::formats::{write_dimacs, BrDoc};
use qreduce::monotone::{BoolGate, GateKind, MmsaInstance, MonotoneCircuit};

fn main() -> qreduce::Result<()> {
    let c = MonotoneCircuit::new(
        2,
        vec![BoolGate {
            kind: GateKind::Or,
            inputs: vec![0, 1],
            out: 2,
        }],
    )?;
    let q = MmsaInstance::new(c.clone(), 1, 2)?;
    let inst = compile_br(&q, &BrOptions::default())?;
    println!(
        "{} variables, {} clauses, max width {}, h = {}, h' = {}",
        inst.formula.n_vars,
        inst.formula.clauses.len(),
        inst.formula.max_width(),
        inst.h,
        inst.hprime
    );

    let path = honest_br_path(&inst, &c, &[true, false])?;
    let v = validate_br_path(&inst, &path);
    let name = |i: usize| format!("{}{}", inst.roles[i].role.letter(), inst.roles[i].index);
    println!("honest path ({} flips, ok={}):", path.len(), v.ok);
    println!(
        "  {}",
        path.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ")
    );

    let (outcome, witness) = bfs_with_witness(&inst.formula, &inst.start, &inst.target, 1 << 24)?;
    println!("BFS: {outcome:?}");
    if let Some(w) = witness {
        println!(
            "  {}",
            w.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ")
        );
    }

    let dimacs = write_dimacs(&BrDoc::from_instance(&inst, Some(&c)))?;
    println!("DIMACS header:");
    for line in dimacs.lines().filter(|l| !l.starts_with("c role")).take(8) {
        println!("  {line}");
    }
    Ok(())
}
