//! Toric-code anyon simulation.
//!
//! The crate builds the planar toric-code vacuum, creates and moves anyons
//! with Pauli strings, braids them, and analyses the resulting four-qubit
//! GHZ states the way a photonic experiment would: correlation curves,
//! Fourier fits, visibility, phase, fidelity and an entanglement witness.
//!
//! Two engines share one Pauli algebra: [`stabilizer::StabilizerState`]
//! scales to large lattices and tracks generator signs exactly, while
//! [`statevector::StateVector`] keeps global phases and serves as the oracle.

pub mod density;
pub mod error;
pub mod experiment;
pub mod lattice;
pub mod optics;
pub mod pauli;
pub mod scenario;
pub mod stabilizer;
pub mod statevector;
mod symplectic;

pub use error::{Error, Result};
pub use lattice::{AnyonKind, LatticeDescriptor, Occupancy, PlaquetteKind, ToricLattice};
pub use pauli::{Pauli, PauliString};
pub use stabilizer::{Clifford1, StabilizerState};
pub use statevector::StateVector;
