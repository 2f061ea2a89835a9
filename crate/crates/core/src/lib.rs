//! Compilers from quantum and classical verifier circuits to local
//! Hamiltonians and CNF formulas, plus the numerical checkers that audit them.
//!
//! * [`kitaev`]: circuit-to-Hamiltonian construction and the history-state
//!   preparation circuit.
//! * [`gscon`]: succinct ground-state connectivity instances.
//! * [`gse`]: ground-state entanglement instances.
//! * [`br`]: Boolean reconfiguration formulas from monotone circuits.
//! * [`cnf`]: clauses and the penalty-to-clause translation.
//! * [`verify`] and [`classical`]: energies, paths, entropies and searches.
//! * [`formats`] and [`cli`]: JSON / DIMACS documents and the `qreduce` binary.

pub mod br;
pub mod circuit;
pub mod classical;
pub mod cli;
pub mod cnf;
pub mod error;
pub mod formats;
pub mod gscon;
pub mod gse;
pub mod hamiltonian;
pub mod kitaev;
pub mod linalg;
pub mod monotone;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
