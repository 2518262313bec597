use super::TrialRecord;
use crate::error::{invalid_arg, Result};
use serde::{Deserialize, Serialize};
use statrs::distribution::{Binomial, DiscreteCDF};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecurityVerdict {
    Secure,
    Compromised,
    /// No announced trial could carry a security-check event.
    Inconclusive,
}

/// Outcome of the security check over the announced subensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecurityCheck {
    pub trials: u64,
    pub events: u64,
    pub frequency: Option<f64>,
    /// `P(X ≥ events)` for `X ~ Binomial(trials, tolerated_rate)`.
    pub p_value: Option<f64>,
    pub verdict: SecurityVerdict,
}

impl SecurityCheck {
    /// One-sided exact binomial test. The channel is flagged when the
    /// observed frequency exceeds `tolerated_rate` and the tail probability
    /// of seeing at least `events` under that rate falls below `epsilon`.
    /// With the default tolerated rate of 0 a single event is decisive.
    pub fn from_counts(events: u64, trials: u64, epsilon: f64, tolerated_rate: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(invalid_arg(format!("epsilon {epsilon} outside (0, 1)")));
        }
        if !(0.0..1.0).contains(&tolerated_rate) {
            return Err(invalid_arg(format!(
                "tolerated rate {tolerated_rate} outside [0, 1)"
            )));
        }
        if events > trials {
            return Err(invalid_arg("more events than trials"));
        }
        if trials == 0 {
            return Ok(SecurityCheck {
                trials,
                events,
                frequency: None,
                p_value: None,
                verdict: SecurityVerdict::Inconclusive,
            });
        }
        let frequency = events as f64 / trials as f64;
        let p_value = binomial_upper_tail(events, trials, tolerated_rate)?;
        let verdict = if frequency > tolerated_rate && p_value < epsilon {
            SecurityVerdict::Compromised
        } else {
            SecurityVerdict::Secure
        };
        Ok(SecurityCheck {
            trials,
            events,
            frequency: Some(frequency),
            p_value: Some(p_value),
            verdict,
        })
    }
}

fn binomial_upper_tail(k: u64, n: u64, p: f64) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let dist = Binomial::new(p, n).map_err(|e| invalid_arg(e.to_string()))?;
    Ok(dist.sf(k - 1))
}

/// Runs the check over the records that were announced and used a QKD
/// axis set; every other record is ignored.
pub fn security_check<'a>(
    records: impl IntoIterator<Item = &'a TrialRecord>,
    epsilon: f64,
    tolerated_rate: f64,
) -> Result<SecurityCheck> {
    let (mut trials, mut events) = (0u64, 0u64);
    for event in records.into_iter().filter_map(|r| r.security_event) {
        trials += 1;
        events += u64::from(event);
    }
    SecurityCheck::from_counts(events, trials, epsilon, tolerated_rate)
}
