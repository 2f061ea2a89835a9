//! Numerical checks on quantum instances.

pub mod diagnostics;
pub mod energy;
pub mod path;

pub use diagnostics::{
    entanglement_entropy, fannes_check, projection_diagnostics, projection_parameters,
    pure_trace_distance, reduced_density_matrix, traversal_check, weight_on, Entanglement,
    FannesReport, LemmaCheck, ProjectionReport, TraversalReport,
};
pub use energy::{
    apply_hamiltonian, dense_matrix, expectation, ground_energy, smallest_nonzero_eigenvalue,
    spectrum, EigenOptions, GroundState, SolveMode,
};
pub use path::{basis_state, path_states, verify_gscon_path, PathOptions, PathVerdict};
