//! Single-trial decision rules shared by the three protocols.

use super::Pair;
use crate::bell::{AxisClass, AxisSet};
use crate::error::{invalid_arg, Error, Result};
use crate::qcore::{Axis, Outcome, Party};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// What a trial contributes once the axes and outcomes are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    KeyQkd(Pair),
    KeyPqss,
    Discard,
}

impl Verdict {
    pub fn is_key(&self) -> bool {
        !matches!(self, Verdict::Discard)
    }
}

/// Verdict plus the bit each party writes down (indexed A, B, C).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepResult {
    pub verdict: Verdict,
    pub key_bits: [Option<Outcome>; 3],
}

impl StepResult {
    pub const DISCARD: StepResult = StepResult {
        verdict: Verdict::Discard,
        key_bits: [None; 3],
    };
}

/// Branch taken by the synthesis protocol after the axes are announced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    QkdBranch,
    PqssBranch,
    Discard,
}

/// What a single secret-sharing participant learns from their own share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inference {
    DealerIsPlus,
    Unknown,
}

/// Each party picks z or x with probability 1/2, Alice first.
pub fn choose_axes<R: Rng + ?Sized>(rng: &mut R) -> AxisSet {
    AxisSet(std::array::from_fn(|_| {
        if rng.random::<f64>() < 0.5 {
            Axis::Z
        } else {
            Axis::X
        }
    }))
}

/// Pair-wise QKD decision: the sole z measurer decides, and on `z+` the
/// other two keep their x outcomes as a shared bit.
pub fn decider_step(axes: AxisSet, outcomes: [Outcome; 3]) -> StepResult {
    let AxisClass::Qkd { decider } = axes.classify() else {
        return StepResult::DISCARD;
    };
    if outcomes[decider.index()] != Outcome::Plus {
        return StepResult::DISCARD;
    }
    let mut key_bits = [None; 3];
    for p in Party::HONEST.into_iter().filter(|&p| p != decider) {
        key_bits[p.index()] = Some(outcomes[p.index()]);
    }
    StepResult {
        verdict: Verdict::KeyQkd(Pair::excluding(decider)),
        key_bits,
    }
}

/// Secret-sharing decision: only z-z-z trials are kept; the dealer's outcome
/// is the secret and the other two outcomes are the shares.
pub fn pqss_step(axes: AxisSet, outcomes: [Outcome; 3], dealer: Party) -> Result<StepResult> {
    if dealer == Party::Eve {
        return Err(invalid_arg("the dealer must be an honest party"));
    }
    if axes.classify() != AxisClass::Pqss {
        return Ok(StepResult::DISCARD);
    }
    Ok(StepResult {
        verdict: Verdict::KeyPqss,
        key_bits: outcomes.map(Some),
    })
}

pub fn synthesis_dispatch(axes: AxisSet) -> Branch {
    match axes.classify() {
        AxisClass::Pqss => Branch::PqssBranch,
        AxisClass::Qkd { .. } => Branch::QkdBranch,
        AxisClass::Useless => Branch::Discard,
    }
}

/// The two non-dealers combine their shares. Exactly one `z-` sits among
/// the three qubits, so equal `+` shares put it on the dealer.
pub fn reconstruct_dealer_bit(share_a: Outcome, share_b: Outcome) -> Result<Outcome> {
    match (share_a, share_b) {
        (Outcome::Plus, Outcome::Plus) => Ok(Outcome::Minus),
        (Outcome::Minus, Outcome::Minus) => Err(Error::ImpossibleState(
            "two z- shares have zero amplitude in the W state".into(),
        )),
        _ => Ok(Outcome::Plus),
    }
}

/// A `z-` share reveals the dealer's bit on its own.
pub fn partial_inference(own_share: Outcome) -> Inference {
    match own_share {
        Outcome::Minus => Inference::DealerIsPlus,
        Outcome::Plus => Inference::Unknown,
    }
}
