use crate::error::{invalid_arg, Result};
use serde::{Deserialize, Serialize};

/// Qubit cost of a run under the two counting conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceAccount {
    /// `q·K_t / (P_s (1 + M/N))`, the textbook expression.
    pub paper: f64,
    /// `q·K_t / (P_s (1 − M/N))`, which equals `q·N` when `K_t = P_s (N − M)`.
    pub exact: f64,
}

/// Entangled-pair protocol with two qubits per trial and `P_s = 2/9`.
pub const E91: (f64, u32) = (2.0 / 9.0, 2);
/// GHZ secret sharing with three qubits per trial and `P_s = 1/2`.
pub const HBB99: (f64, u32) = (0.5, 3);

/// Qubits needed for `key_bits` bits at success probability `p_s`, with
/// `m` of `n` trials spent on security checks.
pub fn key_accounting(
    key_bits: f64,
    p_s: f64,
    n: u64,
    m: u64,
    qubits_per_trial: u32,
) -> Result<ResourceAccount> {
    if !(p_s > 0.0 && p_s <= 1.0) {
        return Err(invalid_arg(format!("success probability {p_s} outside (0, 1]")));
    }
    if n == 0 || m > n {
        return Err(invalid_arg(format!("need 0 ≤ M ≤ N and N ≥ 1, got M={m}, N={n}")));
    }
    if m == n {
        return Err(invalid_arg("every trial was spent on security checks"));
    }
    let ratio = m as f64 / n as f64;
    let q = f64::from(qubits_per_trial);
    Ok(ResourceAccount {
        paper: q * key_bits / (p_s * (1.0 + ratio)),
        exact: q * key_bits / (p_s * (1.0 - ratio)),
    })
}

/// Asymptotic qubits per key bit as `M/N → 0`.
pub fn qubits_per_key_bit(p_s: f64, qubits_per_trial: u32) -> Result<f64> {
    key_accounting(1.0, p_s, 1, 0, qubits_per_trial).map(|a| a.paper)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        assert_eq!(qubits_per_key_bit(0.25, 3).unwrap(), 12.0);
        assert_eq!(qubits_per_key_bit(0.125, 3).unwrap(), 24.0);
        assert_eq!(qubits_per_key_bit(0.375, 3).unwrap(), 8.0);
        assert_eq!(qubits_per_key_bit(E91.0, E91.1).unwrap(), 9.0);
        assert_eq!(qubits_per_key_bit(HBB99.0, HBB99.1).unwrap(), 6.0);
    }

    #[test]
    fn exact_counting_recovers_qubits_spent() {
        // K_t = P_s (N − M) with N = 1000, M = 200
        let a = key_accounting(0.25 * 800.0, 0.25, 1000, 200, 3).unwrap();
        assert!((a.exact - 3000.0).abs() < 1e-9);
        assert!((a.paper - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_success_probability() {
        assert!(key_accounting(10.0, 0.0, 10, 0, 3).is_err());
        assert!(key_accounting(10.0, 0.25, 10, 11, 3).is_err());
        assert!(key_accounting(10.0, 0.25, 10, 10, 3).is_err());
    }
}
