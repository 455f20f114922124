//! Discrete spacetime on the tetrahedral lattice.
//!
//! The crate covers the lattice and its 24-element symmetry group, unitary
//! and spinor representations, causal-set histories, the energy-momentum
//! lattice, truncated Fock-space fields and a discrete Dyson series.
//! Everything combinatorial is exact integer arithmetic; floating point is
//! confined to representation matrices and field operators.

pub mod causet;
pub mod error;
pub mod fock;
pub mod group;
pub mod lattice;
pub mod momentum;
pub mod noboost;
pub mod reference;
pub mod reps;
pub mod scattering;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupTable, SymmetryGroup};
pub use lattice::{LatticeVec3, LatticeVec4};
