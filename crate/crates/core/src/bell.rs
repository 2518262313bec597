//! Exact event probabilities behind the CH-Bell test and the security check.
//!
//! Every probability here is evaluated as the expectation of a polynomial in
//! Pauli operators (an outcome indicator written in ±1 eigenvalues), not by
//! enumerating outcome strings, so that enumeration over
//! [`StateVector::joint_probability`] stays an independent check.

use crate::error::{invalid_arg, Result};
use crate::qcore::{Axis, Party, StateVector};
use crate::states::AttackAngle;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// How to read the "two qubits give z+" probability A₁₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairInterpretation {
    /// `P(z^i = +, z^j = +)` for a fixed pair, third qubit marginalized.
    StrictPair(Party, Party),
    /// Probability that at least two of the three z outcomes are `+`.
    AtLeastTwo,
}

/// Role of an axis triple in the protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisClass {
    /// Exactly one z measurer, who acts as decider.
    Qkd { decider: Party },
    /// z-z-z.
    Pqss,
    Useless,
}

/// Axes chosen by (Alice, Bob, Charlie) in one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisSet(pub [Axis; 3]);

impl AxisSet {
    pub const XXZ: AxisSet = AxisSet([Axis::X, Axis::X, Axis::Z]);
    pub const XZX: AxisSet = AxisSet([Axis::X, Axis::Z, Axis::X]);
    pub const ZXX: AxisSet = AxisSet([Axis::Z, Axis::X, Axis::X]);
    pub const ZZZ: AxisSet = AxisSet([Axis::Z, Axis::Z, Axis::Z]);
    pub const QKD_SETS: [AxisSet; 3] = [Self::XXZ, Self::XZX, Self::ZXX];

    /// All eight triples, Alice's axis varying slowest.
    pub fn all() -> impl Iterator<Item = AxisSet> {
        (0..8usize).map(|i| {
            AxisSet(std::array::from_fn(|q| {
                if (i >> (2 - q)) & 1 == 0 {
                    Axis::Z
                } else {
                    Axis::X
                }
            }))
        })
    }

    pub fn axis(&self, party: Party) -> Axis {
        self.0[party.index()]
    }

    pub fn classify(&self) -> AxisClass {
        let zs: Vec<usize> = (0..3).filter(|&q| self.0[q] == Axis::Z).collect();
        match zs.as_slice() {
            [d] => AxisClass::Qkd {
                decider: Party::from_index(*d).expect("honest index"),
            },
            [_, _, _] => AxisClass::Pqss,
            _ => AxisClass::Useless,
        }
    }

    pub fn is_qkd(&self) -> bool {
        matches!(self.classify(), AxisClass::Qkd { .. })
    }
}

impl fmt::Display for AxisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for AxisSet {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let axes: Vec<Axis> = s
            .chars()
            .filter(|c| *c != '-')
            .map(|c| match c.to_ascii_lowercase() {
                'z' => Ok(Axis::Z),
                'x' => Ok(Axis::X),
                _ => Err(invalid_arg(format!("bad axis `{c}` in `{s}`"))),
            })
            .collect::<Result<_>>()?;
        let axes: [Axis; 3] = axes
            .try_into()
            .map_err(|_| invalid_arg(format!("axis set `{s}` must name three axes")))?;
        Ok(AxisSet(axes))
    }
}

fn check_channel(state: &StateVector) -> Result<()> {
    match state.num_qubits() {
        3 | 4 => Ok(()),
        n => Err(invalid_arg(format!("expected a 3- or 4-qubit channel, got {n}"))),
    }
}

fn honest(p: Party) -> Result<usize> {
    if p == Party::Eve {
        return Err(invalid_arg("Eve's ancilla is never measured by the honest parties"));
    }
    Ok(p.index())
}

fn distinct(parties: &[Party]) -> Result<()> {
    for (i, a) in parties.iter().enumerate() {
        if parties[i + 1..].contains(a) {
            return Err(invalid_arg(format!("party {a} used twice")));
        }
    }
    Ok(())
}

/// A₁₁ under either reading.
pub fn prob_two_z_plus(state: &StateVector, interp: PairInterpretation) -> Result<f64> {
    check_channel(state)?;
    let z = |qs: &[usize]| {
        let ops: Vec<_> = qs.iter().map(|&q| (q, Axis::Z)).collect();
        state.pauli_expectation(&ops)
    };
    match interp {
        PairInterpretation::StrictPair(i, j) => {
            distinct(&[i, j])?;
            let (i, j) = (honest(i)?, honest(j)?);
            // 1[z_i = +] 1[z_j = +] = (1 + Z_i)(1 + Z_j)/4
            Ok((1.0 + z(&[i])? + z(&[j])? + z(&[i, j])?) / 4.0)
        }
        PairInterpretation::AtLeastTwo => {
            // 1[at least two +] = (2 + Z_A + Z_B + Z_C − Z_A Z_B Z_C)/4
            Ok((2.0 + z(&[0])? + z(&[1])? + z(&[2])? - z(&[0, 1, 2])?) / 4.0)
        }
    }
}

/// `P(z^i = +, x^j ≠ x^k)`; a fourth qubit, if present, is marginalized.
pub fn prob_z_plus_x_unequal(
    state: &StateVector,
    z_party: Party,
    x_parties: (Party, Party),
) -> Result<f64> {
    check_channel(state)?;
    distinct(&[z_party, x_parties.0, x_parties.1])?;
    let (i, j, k) = (honest(z_party)?, honest(x_parties.0)?, honest(x_parties.1)?);
    let zi = state.pauli_expectation(&[(i, Axis::Z)])?;
    let xx = state.pauli_expectation(&[(j, Axis::X), (k, Axis::X)])?;
    let zxx = state.pauli_expectation(&[(i, Axis::Z), (j, Axis::X), (k, Axis::X)])?;
    // (1 + Z_i)/2 · (1 − X_j X_k)/2
    Ok((1.0 + zi - xx - zxx) / 4.0)
}

/// `P(x^A = x^B = x^C)`.
pub fn prob_x_all_equal(state: &StateVector) -> Result<f64> {
    check_channel(state)?;
    let xx = |a, b| state.pauli_expectation(&[(a, Axis::X), (b, Axis::X)]);
    Ok((1.0 + xx(0, 1)? + xx(0, 2)? + xx(1, 2)?) / 4.0)
}

/// The four terms and the combination `A₁₁ − A₁₂ − A₂₁ − A₂₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChTerm {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
    pub value: f64,
}

impl ChTerm {
    /// Local hidden-variable models keep the value inside [−1, 0].
    pub fn violates(&self, tol: f64) -> bool {
        self.value > tol || self.value < -1.0 - tol
    }
}

/// CH-Bell combination with `A₁₂ = P(z^i=+, x^j≠x^k)` and
/// `A₂₁ = P(z^j=+, x^i≠x^k)` for `roles = (i, j, k)`.
pub fn ch_middle_term(
    state: &StateVector,
    interp: PairInterpretation,
    roles: (Party, Party, Party),
) -> Result<ChTerm> {
    let (i, j, k) = roles;
    distinct(&[i, j, k])?;
    for p in [i, j, k] {
        honest(p)?;
    }
    let a11 = prob_two_z_plus(state, interp)?;
    let a12 = prob_z_plus_x_unequal(state, i, (j, k))?;
    let a21 = prob_z_plus_x_unequal(state, j, (i, k))?;
    let a22 = prob_x_all_equal(state)?;
    Ok(ChTerm {
        a11,
        a12,
        a21,
        a22,
        value: a11 - a12 - a21 - a22,
    })
}

/// Probability of the security-check event (decider gets z+, the two x
/// measurers disagree) given that the trial used the QKD axis set `axes`.
pub fn security_event_probability(state: &StateVector, axes: AxisSet) -> Result<f64> {
    let AxisClass::Qkd { decider } = axes.classify() else {
        return Err(invalid_arg(format!("{axes} is not a QKD axis set")));
    };
    let others: Vec<Party> = Party::HONEST
        .into_iter()
        .filter(|&p| p != decider)
        .collect();
    prob_z_plus_x_unequal(state, decider, (others[0], others[1]))
}

/// Closed form of [`security_event_probability`] on the post-attack state
/// with Charlie's qubit coupled: `sin²φ/6` when Charlie decides, else
/// `(1 − cos φ)/3`.
pub fn security_event_closed_form(phi: AttackAngle, axes: AxisSet) -> Result<f64> {
    let (s, c) = phi.radians().sin_cos();
    match axes.classify() {
        AxisClass::Qkd {
            decider: Party::Charlie,
        } => Ok(s * s / 6.0),
        AxisClass::Qkd { .. } => Ok((1.0 - c) / 3.0),
        _ => Err(invalid_arg(format!("{axes} is not a QKD axis set"))),
    }
}

/// `P̄(φ) = (1 − cos φ)(5 + cos φ)/18`, the security-event rate averaged
/// over the three equally likely QKD axis sets.
pub fn averaged_security_probability(phi: AttackAngle) -> f64 {
    let c = phi.radians().cos();
    (1.0 - c) * (5.0 + c) / 18.0
}
