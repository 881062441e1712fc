//! Exact diagonalization, thermal states and pairwise negativity of a
//! mixed spin-(1/2, 1) Heisenberg tetramer.

pub mod analytic_rdm;
pub mod analytic_spectrum;
pub mod eigensolve;
pub mod error;
pub mod golden;
pub mod negativity;
pub mod par;
pub mod spin_algebra;
pub mod sweeps;
pub mod thermal;
pub mod verify;

pub use error::{Error, Result};
pub use negativity::{all_negativities, negativity, PairLabel, Temperature};
pub use par::Exec;
pub use spin_algebra::{build_hamiltonian, ModelParams, SymMatrix};
pub use thermal::{gibbs_state, ground_manifold_state, partial_trace, ReducedDensityMatrix};
