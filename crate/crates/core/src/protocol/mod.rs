//! Three-party protocol engine over the W-state channel.
//!
//! A trial is: every party picks an axis, measures its qubit and announces
//! the axis; a random subset of trials additionally has its outcomes
//! announced for the security check; the rest are sifted into QKD key bits
//! (one z measurer who got `z+`), secret shares (z-z-z) or discarded.

mod accounting;
mod engine;
mod security;
mod steps;

pub use accounting::{key_accounting, qubits_per_key_bit, ResourceAccount, E91, HBB99};
pub use engine::{run_protocol, run_trial, KeyMaterial, Run, RunReport, TrialRecord, TrialRunner};
pub use security::{security_check, SecurityCheck, SecurityVerdict};
pub use steps::{
    choose_axes, decider_step, partial_inference, pqss_step, reconstruct_dealer_bit,
    synthesis_dispatch, Branch, Inference, StepResult, Verdict,
};

use crate::adversary::AttackConfig;
use crate::error::{invalid_arg, Result};
use crate::qcore::Party;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Qubits distributed per trial.
pub const QUBITS_PER_TRIAL: u32 = 3;
pub const DEFAULT_ANNOUNCE_RATE: f64 = 0.1;
pub const DEFAULT_EPSILON: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolMode {
    Qkd,
    Pqss,
    Synth,
}

impl ProtocolMode {
    /// Probability that a trial yields a key bit on an unattacked channel.
    pub fn success_probability(self) -> f64 {
        match self {
            ProtocolMode::Qkd => 0.25,
            ProtocolMode::Pqss => 0.125,
            ProtocolMode::Synth => 0.375,
        }
    }
}

impl fmt::Display for ProtocolMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProtocolMode::Qkd => "qkd",
            ProtocolMode::Pqss => "pqss",
            ProtocolMode::Synth => "synth",
        })
    }
}

impl FromStr for ProtocolMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qkd" => Ok(ProtocolMode::Qkd),
            "pqss" => Ok(ProtocolMode::Pqss),
            "synth" => Ok(ProtocolMode::Synth),
            _ => Err(invalid_arg(format!("unknown mode `{s}`"))),
        }
    }
}

/// The pair that shares a QKD key bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pair {
    AB,
    BC,
    AC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::BC, Pair::AC];

    /// The pair left over when `decider` measured z.
    pub fn excluding(decider: Party) -> Pair {
        match decider {
            Party::Alice => Pair::BC,
            Party::Bob => Pair::AC,
            _ => Pair::AB,
        }
    }

    pub fn members(self) -> (Party, Party) {
        match self {
            Pair::AB => (Party::Alice, Party::Bob),
            Pair::BC => (Party::Bob, Party::Charlie),
            Pair::AC => (Party::Alice, Party::Charlie),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub mode: ProtocolMode,
    pub trials: u64,
    /// Per-trial probability that outcomes are announced for the check.
    pub announce_rate: f64,
    pub attack: AttackConfig,
    pub seed: u64,
    /// Significance of the security test.
    pub epsilon: f64,
    /// Security-event rate regarded as acceptable noise.
    pub tolerated_rate: f64,
    /// Secret holder in secret-sharing trials.
    pub dealer: Party,
}

impl ProtocolConfig {
    pub fn new(mode: ProtocolMode, trials: u64, seed: u64) -> Self {
        ProtocolConfig {
            mode,
            trials,
            announce_rate: DEFAULT_ANNOUNCE_RATE,
            attack: AttackConfig::None,
            seed,
            epsilon: DEFAULT_EPSILON,
            tolerated_rate: 0.0,
            dealer: Party::Alice,
        }
    }

    pub fn with_announce_rate(mut self, rate: f64) -> Self {
        self.announce_rate = rate;
        self
    }

    pub fn with_attack(mut self, attack: AttackConfig) -> Self {
        self.attack = attack;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_dealer(mut self, dealer: Party) -> Self {
        self.dealer = dealer;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid_arg("at least one trial is required"));
        }
        if !(0.0..1.0).contains(&self.announce_rate) {
            return Err(invalid_arg(format!(
                "announce rate {} outside [0, 1)",
                self.announce_rate
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(invalid_arg(format!("epsilon {} outside (0, 1)", self.epsilon)));
        }
        if !(0.0..1.0).contains(&self.tolerated_rate) {
            return Err(invalid_arg("tolerated rate outside [0, 1)"));
        }
        if self.dealer == Party::Eve {
            return Err(invalid_arg("the dealer must be an honest party"));
        }
        if let AttackConfig::UnitaryCoupling {
            target: Party::Eve, ..
        } = self.attack
        {
            return Err(invalid_arg("Eve cannot target her own ancilla"));
        }
        Ok(())
    }
}
