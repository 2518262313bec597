//! Canonical states and Eve's coupling operator.

use crate::error::{invalid_arg, Result};
use crate::qcore::{make_basis_state, Amplitude, CMatrix, Outcome, StateVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

/// Strength φ ∈ [0, π/2] of the coupling attack. 0 leaves the channel alone.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AttackAngle(f64);

impl AttackAngle {
    pub const NONE: AttackAngle = AttackAngle(0.0);
    pub const MAXIMAL: AttackAngle = AttackAngle(FRAC_PI_2);

    pub fn new(phi: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(invalid_arg(format!("attack angle {phi} outside [0, π/2]")));
        }
        Ok(AttackAngle(phi))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AttackAngle {
    type Error = crate::Error;

    fn try_from(phi: f64) -> Result<Self> {
        AttackAngle::new(phi)
    }
}

impl From<AttackAngle> for f64 {
    fn from(a: AttackAngle) -> f64 {
        a.0
    }
}

fn real(x: f64) -> Amplitude {
    Amplitude::new(x, 0.0)
}

/// `(|z-z+z+> + |z+z-z+> + |z+z+z->)/√3`.
pub fn w_state() -> StateVector {
    let s = 1.0 / 3f64.sqrt();
    let mut a = vec![real(0.0); 8];
    for i in [4, 2, 1] {
        a[i] = real(s);
    }
    StateVector::from_amplitudes(3, a).expect("W state is normalized")
}

/// `(|z+z+z+> + |z-z-z->)/√2`.
pub fn ghz_state() -> StateVector {
    let mut a = vec![real(0.0); 8];
    a[0] = real(FRAC_1_SQRT_2);
    a[7] = real(FRAC_1_SQRT_2);
    StateVector::from_amplitudes(3, a).expect("GHZ state is normalized")
}

/// Eve's coupling on (channel qubit, ancilla), local basis order
/// `|z+z+>, |z+z->, |z-z+>, |z-z->`:
///
/// ```text
/// |z+z+> -> |z+z+>
/// |z-z+> -> cos φ |z-z+> + sin φ |z+z->
/// |z+z-> -> cos φ |z+z-> − sin φ |z-z+>
/// |z-z-> -> |z-z->
/// ```
///
/// Only the first two rows are ever exercised because the ancilla starts
/// in `|z+>`; the other two complete the rotation to a unitary.
pub fn u_ce(phi: AttackAngle) -> CMatrix {
    let (s, c) = phi.radians().sin_cos();
    let mut u = CMatrix::zeros(4);
    u[(0, 0)] = real(1.0);
    u[(3, 3)] = real(1.0);
    // columns are images of the input basis vectors
    u[(2, 2)] = real(c);
    u[(1, 2)] = real(s);
    u[(1, 1)] = real(c);
    u[(2, 1)] = real(-s);
    u
}

/// Post-attack state of (A, B, C, E) written out term by term:
/// `(|z-z+z+z+> + |z+z-z+z+> + cos φ |z+z+z-z+> + sin φ |z+z+z+z->)/√3`.
pub fn w_prime(phi: AttackAngle) -> StateVector {
    let (s, c) = phi.radians().sin_cos();
    let k = 1.0 / 3f64.sqrt();
    let mut a = vec![real(0.0); 16];
    a[0b1000] = real(k);
    a[0b0100] = real(k);
    a[0b0010] = real(k * c);
    a[0b0001] = real(k * s);
    StateVector::from_amplitudes(4, a).expect("W' is normalized")
}

/// Single-qubit `|z+>` used as Eve's fresh ancilla.
pub fn ancilla() -> StateVector {
    make_basis_state(1, &[Outcome::Plus]).expect("one-qubit basis state")
}
