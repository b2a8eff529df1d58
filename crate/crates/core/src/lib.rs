//! Spectral analysis of 1-D Schrödinger operators with δ- and δ'-point
//! interactions on the half-line.
//!
//! The crate builds the Jacobi matrices attached to these Hamiltonians,
//! counts negative eigenvalues by exact finite formulas, evaluates the named
//! self-adjointness / semiboundedness / discreteness / spectral-type
//! criteria, and cross-validates every counting formula against independent
//! shooting-method oracles.

pub mod criteria;
pub mod jacobi;
pub mod linalg;
pub mod model;
pub mod negspec;
pub mod spectra;
pub mod verify;

pub use model::{HamiltonianConfig, InteractionKind};
