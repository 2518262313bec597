use super::security::{security_check, SecurityCheck, SecurityVerdict};
use super::steps::{
    choose_axes, decider_step, pqss_step, reconstruct_dealer_bit, synthesis_dispatch, Branch,
    StepResult, Verdict,
};
use super::{key_accounting, Pair, ProtocolConfig, ProtocolMode, QUBITS_PER_TRIAL};
use crate::adversary::{apply_attack, AttackConfig, EVE_QUBIT};
use crate::bell::{AxisClass, AxisSet};
use crate::error::Result;
use crate::qcore::{Axis, Outcome, Party, StateVector};
use crate::states::w_state;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One round of the protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub axes: AxisSet,
    /// Private outcomes of Alice, Bob and Charlie.
    pub outcomes: [Outcome; 3],
    /// Eve's z reading of her ancilla, when attacking.
    pub eve_outcome: Option<Outcome>,
    pub announced: bool,
    pub verdict: Verdict,
    /// Bits written down by each honest party. Always empty for announced
    /// trials since their outcomes are public.
    pub key_bits: [Option<Outcome>; 3],
    /// Set only for announced trials with a QKD axis set.
    pub security_event: Option<bool>,
}

impl TrialRecord {
    pub fn contributes_key(&self) -> bool {
        !self.announced && self.verdict.is_key()
    }
}

/// Security-check event: the decider saw `z+` while the two x outcomes differ.
fn is_security_event(axes: AxisSet, outcomes: &[Outcome; 3]) -> Option<bool> {
    let AxisClass::Qkd { decider } = axes.classify() else {
        return None;
    };
    let xs: Vec<Outcome> = Party::HONEST
        .into_iter()
        .filter(|&p| p != decider)
        .map(|p| outcomes[p.index()])
        .collect();
    Some(outcomes[decider.index()] == Outcome::Plus && xs[0] != xs[1])
}

/// Runs individual trials of one configuration. The (possibly attacked)
/// source state is built once and shared by every trial.
#[derive(Debug, Clone)]
pub struct TrialRunner {
    config: ProtocolConfig,
    source: StateVector,
}

impl TrialRunner {
    pub fn new(config: ProtocolConfig) -> Result<Self> {
        config.validate()?;
        let source = apply_attack(&w_state(), &config.attack)?;
        Ok(TrialRunner { config, source })
    }

    pub fn config(&self) -> &ProtocolConfig {
        &self.config
    }

    /// Per-trial substream: the root seed selects the key, the trial index
    /// the stream, so any trial can be replayed on its own.
    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(index);
        rng
    }

    pub fn trial(&self, index: u64) -> Result<TrialRecord> {
        let mut rng = self.rng(index);
        // draw order: axes A, B, C; measurements A, B, C, E; announcement
        let axes = choose_axes(&mut rng);
        let draws: [f64; 4] = std::array::from_fn(|_| rng.random());
        let announced = rng.random::<f64>() < self.config.announce_rate;

        let mut state = self.source.clone();
        let mut outcomes = [Outcome::Plus; 3];
        for (q, outcome) in outcomes.iter_mut().enumerate() {
            let m = state.measure_qubit(q, axes.0[q], draws[q])?;
            *outcome = m.outcome;
            state = m.state;
        }
        let eve_outcome = if state.num_qubits() > EVE_QUBIT {
            Some(state.measure_qubit(EVE_QUBIT, Axis::Z, draws[3])?.outcome)
        } else {
            None
        };

        let step = match self.config.mode {
            ProtocolMode::Qkd => decider_step(axes, outcomes),
            ProtocolMode::Pqss => pqss_step(axes, outcomes, self.config.dealer)?,
            ProtocolMode::Synth => match synthesis_dispatch(axes) {
                Branch::QkdBranch => decider_step(axes, outcomes),
                Branch::PqssBranch => pqss_step(axes, outcomes, self.config.dealer)?,
                Branch::Discard => StepResult::DISCARD,
            },
        };

        Ok(TrialRecord {
            index,
            axes,
            outcomes,
            eve_outcome,
            announced,
            verdict: step.verdict,
            key_bits: if announced { [None; 3] } else { step.key_bits },
            security_event: if announced {
                is_security_event(axes, &outcomes)
            } else {
                None
            },
        })
    }
}

/// Runs trial `index` of `config` in isolation.
pub fn run_trial(config: &ProtocolConfig, index: u64) -> Result<TrialRecord> {
    TrialRunner::new(*config)?.trial(index)
}

/// Aggregated statistics of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: ProtocolMode,
    pub seed: u64,
    pub trials: u64,
    pub announced: u64,
    pub effective_trials: u64,
    pub announce_rate: f64,
    pub attack_phi: Option<f64>,
    pub attack_target: Option<Party>,
    pub key_bits_ab: u64,
    pub key_bits_bc: u64,
    pub key_bits_ac: u64,
    pub qkd_key_bits: u64,
    pub pqss_key_bits: u64,
    pub total_key_bits: u64,
    pub expected_success_rate: f64,
    pub success_rate: Option<f64>,
    pub qkd_set_trials: u64,
    pub qkd_conditional_success: Option<f64>,
    pub qkd_key_disagreements: u64,
    pub pqss_reconstruction_failures: u64,
    pub partial_inference_events: u64,
    pub partial_inference_rate: Option<f64>,
    pub security_trials: u64,
    pub security_events: u64,
    pub security_event_frequency: Option<f64>,
    pub security_p_value: Option<f64>,
    pub epsilon: f64,
    pub qubits_consumed: u64,
    pub qubits_per_key_bit: Option<f64>,
    pub n_q_paper: Option<f64>,
    pub n_q_exact: Option<f64>,
    pub verdict: SecurityVerdict,
}

/// Sifted key strings held by each party.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyMaterial {
    /// Per pair: the first member's bits and the second member's bits.
    pub qkd: BTreeMap<Pair, (Vec<Outcome>, Vec<Outcome>)>,
    pub pqss_secret: Vec<Outcome>,
    /// Shares of the two non-dealers, in party order.
    pub pqss_shares: (Vec<Outcome>, Vec<Outcome>),
}

impl KeyMaterial {
    pub fn qkd_disagreements(&self) -> u64 {
        self.qkd
            .values()
            .flat_map(|(a, b)| a.iter().zip(b).filter(|(x, y)| x != y))
            .count() as u64
    }

    /// Secret bits the non-dealers fail to rebuild, impossible share pairs included.
    pub fn pqss_failures(&self) -> u64 {
        let (b, c) = &self.pqss_shares;
        self.pqss_secret
            .iter()
            .zip(b.iter().zip(c))
            .filter(|(s, (b, c))| !reconstruct_dealer_bit(**b, **c).is_ok_and(|r| r == **s))
            .count() as u64
    }
}

/// A finished run with every trial kept.
#[derive(Debug, Clone)]
pub struct Run {
    pub config: ProtocolConfig,
    pub records: Vec<TrialRecord>,
    pub security: SecurityCheck,
    pub report: RunReport,
}

impl Run {
    /// Executes all trials. Trials run in parallel; the records come back in
    /// index order, so the fold below is deterministic.
    pub fn execute(config: ProtocolConfig) -> Result<Run> {
        let runner = TrialRunner::new(config)?;
        let records = (0..config.trials)
            .into_par_iter()
            .map(|i| runner.trial(i))
            .collect::<Result<Vec<_>>>()?;
        let security = security_check(&records, config.epsilon, config.tolerated_rate)?;
        let report = build_report(&config, &records, &security)?;
        Ok(Run {
            config,
            records,
            security,
            report,
        })
    }

    pub fn keys(&self) -> KeyMaterial {
        collect_keys(&self.records, self.config.dealer)
    }
}

fn collect_keys(records: &[TrialRecord], dealer: Party) -> KeyMaterial {
    let mut keys = KeyMaterial::default();
    let holders: Vec<Party> = Party::HONEST.into_iter().filter(|&p| p != dealer).collect();
    for r in records.iter().filter(|r| r.contributes_key()) {
        match r.verdict {
            Verdict::KeyQkd(pair) => {
                let (p, q) = pair.members();
                let entry = keys.qkd.entry(pair).or_default();
                entry.0.extend(r.key_bits[p.index()]);
                entry.1.extend(r.key_bits[q.index()]);
            }
            Verdict::KeyPqss => {
                keys.pqss_secret.extend(r.key_bits[dealer.index()]);
                keys.pqss_shares.0.extend(r.key_bits[holders[0].index()]);
                keys.pqss_shares.1.extend(r.key_bits[holders[1].index()]);
            }
            Verdict::Discard => {}
        }
    }
    keys
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

fn build_report(
    config: &ProtocolConfig,
    records: &[TrialRecord],
    security: &SecurityCheck,
) -> Result<RunReport> {
    let trials = config.trials;
    let announced = records.iter().filter(|r| r.announced).count() as u64;
    let effective = trials - announced;
    let keys = collect_keys(records, config.dealer);
    let pair_bits = |p: Pair| keys.qkd.get(&p).map_or(0, |(a, _)| a.len() as u64);
    let (ab, bc, ac) = (pair_bits(Pair::AB), pair_bits(Pair::BC), pair_bits(Pair::AC));
    let qkd_bits = ab + bc + ac;
    let pqss_bits = keys.pqss_secret.len() as u64;
    let total = qkd_bits + pqss_bits;

    let qkd_set_trials = records
        .iter()
        .filter(|r| !r.announced && r.axes.is_qkd())
        .count() as u64;
    let inference_events = keys
        .pqss_shares
        .0
        .iter()
        .chain(&keys.pqss_shares.1)
        .filter(|&&s| s == Outcome::Minus)
        .count() as u64;

    let qubits = trials * u64::from(QUBITS_PER_TRIAL);
    let p_s = config.mode.success_probability();
    let account = key_accounting(total as f64, p_s, trials, announced, QUBITS_PER_TRIAL).ok();
    let (phi, target) = match config.attack {
        AttackConfig::None => (None, None),
        AttackConfig::UnitaryCoupling { phi, target } => (Some(phi.radians()), Some(target)),
    };

    Ok(RunReport {
        mode: config.mode,
        seed: config.seed,
        trials,
        announced,
        effective_trials: effective,
        announce_rate: config.announce_rate,
        attack_phi: phi,
        attack_target: target,
        key_bits_ab: ab,
        key_bits_bc: bc,
        key_bits_ac: ac,
        qkd_key_bits: qkd_bits,
        pqss_key_bits: pqss_bits,
        total_key_bits: total,
        expected_success_rate: p_s,
        success_rate: ratio(total, effective),
        qkd_set_trials,
        qkd_conditional_success: match config.mode {
            ProtocolMode::Pqss => None,
            _ => ratio(qkd_bits, qkd_set_trials),
        },
        qkd_key_disagreements: keys.qkd_disagreements(),
        pqss_reconstruction_failures: keys.pqss_failures(),
        partial_inference_events: inference_events,
        partial_inference_rate: ratio(inference_events, 2 * pqss_bits),
        security_trials: security.trials,
        security_events: security.events,
        security_event_frequency: security.frequency,
        security_p_value: security.p_value,
        epsilon: config.epsilon,
        qubits_consumed: qubits,
        qubits_per_key_bit: ratio(qubits, total),
        n_q_paper: account.map(|a| a.paper),
        n_q_exact: account.map(|a| a.exact),
        verdict: security.verdict,
    })
}

/// Runs `config.trials` trials and aggregates them.
pub fn run_protocol(config: &ProtocolConfig) -> Result<RunReport> {
    Run::execute(*config).map(|run| run.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::AttackAngle;

    #[test]
    fn trials_replay_independently() {
        let cfg = ProtocolConfig::new(ProtocolMode::Synth, 100, 42);
        let runner = TrialRunner::new(cfg).unwrap();
        let all: Vec<_> = (0..100).map(|i| runner.trial(i).unwrap()).collect();
        assert_eq!(run_trial(&cfg, 37).unwrap(), all[37]);
        let run = Run::execute(cfg).unwrap();
        assert_eq!(run.records, all);
    }

    #[test]
    fn accounting_adds_up() {
        let cfg = ProtocolConfig::new(ProtocolMode::Synth, 5000, 1).with_announce_rate(0.3);
        let run = Run::execute(cfg).unwrap();
        let r = &run.report;
        let discards = run
            .records
            .iter()
            .filter(|t| !t.announced && !t.verdict.is_key())
            .count() as u64;
        assert_eq!(r.total_key_bits + discards + r.announced, r.trials);
        assert!(run
            .records
            .iter()
            .filter(|t| t.announced)
            .all(|t| t.key_bits == [None; 3]));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(Run::execute(ProtocolConfig::new(ProtocolMode::Qkd, 0, 1)).is_err());
        assert!(
            Run::execute(ProtocolConfig::new(ProtocolMode::Qkd, 10, 1).with_announce_rate(1.0))
                .is_err()
        );
        assert!(
            Run::execute(ProtocolConfig::new(ProtocolMode::Pqss, 10, 1).with_dealer(Party::Eve))
                .is_err()
        );
    }

    #[test]
    fn attacked_trials_record_eve() {
        let attack = AttackConfig::coupling(AttackAngle::MAXIMAL, Party::Charlie).unwrap();
        let cfg = ProtocolConfig::new(ProtocolMode::Qkd, 10, 3).with_attack(attack);
        assert!(run_trial(&cfg, 0).unwrap().eve_outcome.is_some());
        let clean = ProtocolConfig::new(ProtocolMode::Qkd, 10, 3);
        assert!(run_trial(&clean, 0).unwrap().eve_outcome.is_none());
    }

    #[test]
    fn zero_announce_rate_is_inconclusive() {
        let cfg = ProtocolConfig::new(ProtocolMode::Qkd, 200, 9).with_announce_rate(0.0);
        let r = run_protocol(&cfg).unwrap();
        assert_eq!(r.announced, 0);
        assert_eq!(r.verdict, SecurityVerdict::Inconclusive);
    }
}
