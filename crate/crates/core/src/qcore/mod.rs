//! Small-qubit statevector and density-matrix mathematics.
//!
//! Basis convention: qubit 0 is the most significant bit of a basis index and
//! bit value 0 is `|z+>`, 1 is `|z->`. The x eigenstates are
//! `|x±> = (|z+> ± |z->)/√2`.

mod eigen;
mod matrix;
mod state;
mod tangle;

use serde::{Deserialize, Serialize};
use std::fmt;

pub use eigen::{eigenvalues_hermitian, eigh, EIGEN_TOLERANCE};
pub use matrix::{partial_transpose, reduced_density, CMatrix, DensityMatrix, Subsystem};
pub use num_complex::Complex64 as Amplitude;
pub use state::{make_basis_state, Measurement, StateVector, MAX_QUBITS, NORM_TOLERANCE};
pub use tangle::three_tangle;

/// Measurement axis. Only the two Pauli observables used by the protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Z,
    X,
}

impl Axis {
    pub const ALL: [Axis; 2] = [Axis::Z, Axis::X];
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Z => "z",
            Axis::X => "x",
        })
    }
}

/// Outcome of a single-qubit measurement along either axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const ALL: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    /// Bit value under the basis convention (`Plus` ↔ 0).
    pub fn bit(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Self {
        if bit == 0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    /// Eigenvalue of the measured Pauli operator.
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+",
            Outcome::Minus => "-",
        })
    }
}

/// A participant holding one qubit. Eve's ancilla is appended as qubit 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
    Charlie,
    Eve,
}

impl Party {
    pub const HONEST: [Party; 3] = [Party::Alice, Party::Bob, Party::Charlie];

    pub fn index(self) -> usize {
        match self {
            Party::Alice => 0,
            Party::Bob => 1,
            Party::Charlie => 2,
            Party::Eve => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            0 => Some(Party::Alice),
            1 => Some(Party::Bob),
            2 => Some(Party::Charlie),
            3 => Some(Party::Eve),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Party::Alice => 'A',
            Party::Bob => 'B',
            Party::Charlie => 'C',
            Party::Eve => 'E',
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Party {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "alice" => Ok(Party::Alice),
            "b" | "bob" => Ok(Party::Bob),
            "c" | "charlie" => Ok(Party::Charlie),
            "e" | "eve" => Ok(Party::Eve),
            _ => Err(crate::error::invalid_arg(format!("unknown party `{s}`"))),
        }
    }
}
