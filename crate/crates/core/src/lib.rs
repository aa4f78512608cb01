//! Floquet random Clifford chains in the binary symplectic phase-space picture.
//!
//! A chain has `L` sites of `N` qubits. Each of the `L` two-site gates is a uniformly
//! random element of `Sp(4N, Z_2)` and the circuit alternates even and odd brickwork
//! layers, repeated periodically in time. Pauli operators are phase-free vectors in
//! `Z_2^{2NL}` and evolve linearly.

pub mod chain;
pub mod cli;
pub mod design;
pub mod ergodicity;
pub mod error;
pub mod gf2;
pub mod montecarlo;
pub mod symplectic;
pub mod walls;

pub use error::{Error, Result};

/// Version of every JSON artifact layout.
pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
