//! Individual attacks on the distributed qubits.
//!
//! Eve intercepts one honest party's qubit per trial, couples it to a fresh
//! `|z+>` ancilla with [`u_ce`] and keeps the ancilla. No memory is carried
//! from one trial to the next.

use crate::error::{invalid_arg, Result};
use crate::qcore::{Axis, Outcome, Party, StateVector};
use crate::states::{ancilla, u_ce, AttackAngle};
use serde::{Deserialize, Serialize};

/// Qubit index of Eve's ancilla once it has been appended.
pub const EVE_QUBIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum AttackConfig {
    #[default]
    None,
    UnitaryCoupling { phi: AttackAngle, target: Party },
}

impl AttackConfig {
    pub fn coupling(phi: AttackAngle, target: Party) -> Result<Self> {
        if target == Party::Eve {
            return Err(invalid_arg("Eve cannot target her own ancilla"));
        }
        Ok(AttackConfig::UnitaryCoupling { phi, target })
    }

    pub fn phi(&self) -> Option<AttackAngle> {
        match self {
            AttackConfig::None => None,
            AttackConfig::UnitaryCoupling { phi, .. } => Some(*phi),
        }
    }
}

/// Returns the channel as the honest parties receive it: unchanged for
/// [`AttackConfig::None`], otherwise a 4-qubit state with the ancilla last.
pub fn apply_attack(source: &StateVector, attack: &AttackConfig) -> Result<StateVector> {
    match *attack {
        AttackConfig::None => Ok(source.clone()),
        AttackConfig::UnitaryCoupling { phi, target } => {
            if source.num_qubits() != 3 {
                return Err(invalid_arg("attacks apply to the three-qubit channel"));
            }
            if target == Party::Eve {
                return Err(invalid_arg("Eve cannot target her own ancilla"));
            }
            source
                .tensor(&ancilla())?
                .apply_two_qubit(&u_ce(phi), target.index(), EVE_QUBIT)
        }
    }
}

/// Probability that a z measurement of Eve's ancilla gives `z-`.
pub fn eve_ancilla_statistics(state: &StateVector) -> Result<f64> {
    if state.num_qubits() != 4 {
        return Err(invalid_arg(format!(
            "expected the 4-qubit attacked channel, got {} qubits",
            state.num_qubits()
        )));
    }
    state.joint_probability(&[(EVE_QUBIT, Axis::Z, Outcome::Minus)])
}
