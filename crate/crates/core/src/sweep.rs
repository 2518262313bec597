//! Security-event frequency as a function of the attack strength.

use crate::adversary::AttackConfig;
use crate::bell::averaged_security_probability;
use crate::error::{invalid_arg, Result};
use crate::protocol::{run_protocol, ProtocolConfig, ProtocolMode, SecurityVerdict};
use crate::qcore::Party;
use crate::states::AttackAngle;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub phi: f64,
    /// Analytic averaged security-event probability.
    pub p_bar: f64,
    /// Observed frequency over the announced QKD-set trials.
    pub empirical: Option<f64>,
    /// Binomial standard error of `empirical` around `p_bar`.
    pub sigma: Option<f64>,
    pub verdict: SecurityVerdict,
}

impl SweepRow {
    /// Whether the empirical frequency lies within `k` standard errors.
    pub fn within(&self, k: f64) -> bool {
        match (self.empirical, self.sigma) {
            (Some(e), Some(s)) => (e - self.p_bar).abs() <= k * s,
            _ => false,
        }
    }
}

/// Base configuration for a sweep; each grid point swaps in its own attack
/// and keeps the seed, so points differ only in φ.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub trials: u64,
    pub seed: u64,
    pub announce_rate: f64,
    pub target: Party,
    pub epsilon: f64,
}

pub fn sweep_phi(grid: &[f64], cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(invalid_arg("the phi grid is empty"));
    }
    grid.iter()
        .map(|&phi| {
            let angle = AttackAngle::new(phi)?;
            let config = ProtocolConfig::new(ProtocolMode::Qkd, cfg.trials, cfg.seed)
                .with_announce_rate(cfg.announce_rate)
                .with_epsilon(cfg.epsilon)
                .with_attack(AttackConfig::coupling(angle, cfg.target)?);
            let report = run_protocol(&config)?;
            let p_bar = averaged_security_probability(angle);
            let sigma = (report.security_trials > 0)
                .then(|| (p_bar * (1.0 - p_bar) / report.security_trials as f64).sqrt());
            Ok(SweepRow {
                phi,
                p_bar,
                empirical: report.security_event_frequency,
                sigma,
                verdict: report.verdict,
            })
        })
        .collect()
}
