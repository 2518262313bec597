//! Simulation and verification of three-party secure communication over the
//! symmetric W state.
//!
//! The crate is organised bottom-up:
//!
//! * [`qcore`] holds the small-qubit linear algebra: state vectors, projective
//!   measurement, reduced density matrices, partial transposition, a Jacobi
//!   eigensolver for Hermitian matrices and the three-tangle.
//! * [`states`] builds the W and GHZ states, Eve's coupling unitary and the
//!   post-attack four-qubit state.
//! * [`bell`] evaluates the elements-of-reality probabilities, the CH-Bell
//!   middle term and the security-check event probabilities exactly.
//! * [`adversary`] injects the individual coupling attack into a channel.
//! * [`protocol`] runs pair-wise QKD, partial secret sharing and their
//!   synthesis as seeded, replayable three-party state machines.
//! * [`cli`] and [`golden`] back the `wqsc` binary.
//!
//! ```
//! use wqsc::{bell, states};
//!
//! let w = states::w_state();
//! let p = bell::prob_x_all_equal(&w).unwrap();
//! assert!((p - 0.75).abs() < 1e-12);
//! ```

pub mod adversary;
pub mod bell;
pub mod cli;
mod error;
pub mod golden;
pub mod protocol;
pub mod qcore;
pub mod report;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use qcore::{Axis, Outcome, Party, StateVector};
