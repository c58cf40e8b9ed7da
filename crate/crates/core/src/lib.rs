//! Dynamical Lie algebras of centrally coupled spin networks.
//!
//! The crate builds the Lie algebra generated by a drift and two global
//! control Hamiltonians on a register split into central (C) and peripheral (P)
//! spins, decomposes the Hilbert space into the invariant subspaces of the
//! permutation symmetry `S_{n_c} x S_{n_p}`, and decides on each subspace
//! whether the algebra acts as `su(m)` or `u(m)`.

pub mod decomposition;
pub mod error;
pub mod lie;
pub mod model;
pub mod pauli;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};
pub use lie::{closure, commutes_with_group, default_max_dim, span_equal, LieBasis};
pub use pauli::{Axis, Operator, Pauli, PauliWord, Phase, Region, RegisterSpec};
