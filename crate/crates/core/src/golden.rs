//! Closed-form reference values, each recomputed analytically from the
//! library (no sampling). Backs `wqsc verify`.

use crate::adversary::{apply_attack, eve_ancilla_statistics, AttackConfig};
use crate::bell::{
    averaged_security_probability, ch_middle_term, prob_two_z_plus, prob_x_all_equal,
    prob_z_plus_x_unequal, security_event_probability, AxisSet, PairInterpretation,
};
use crate::error::Result;
use crate::protocol::{key_accounting, qubits_per_key_bit, E91, HBB99, QUBITS_PER_TRIAL};
use crate::qcore::{
    eigenvalues_hermitian, partial_transpose, reduced_density, three_tangle, Axis, Outcome,
    Party, StateVector, Subsystem,
};
use crate::states::{ghz_state, u_ce, w_prime, w_state, AttackAngle};
use std::f64::consts::{FRAC_PI_2, PI};

/// Absolute tolerance used by `wqsc verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenItem {
    pub name: &'static str,
    pub expected: f64,
    pub computed: f64,
}

impl GoldenItem {
    pub fn passes(&self, tol: f64) -> bool {
        (self.expected - self.computed).abs() <= tol
    }
}

use Party::{Alice as A, Bob as B, Charlie as C};

fn angle(phi: f64) -> AttackAngle {
    AttackAngle::new(phi).expect("grid angle in range")
}

/// `P(trial keeps a key bit)` summed over the axis sets that feed `accept`,
/// each drawn with probability 1/8, on the clean W channel.
fn analytic_success(w: &StateVector, qkd: bool, pqss: bool) -> Result<f64> {
    let mut total = 0.0;
    for axes in AxisSet::all() {
        match axes.classify() {
            crate::bell::AxisClass::Qkd { decider } if qkd => {
                total += w.joint_probability(&[(decider.index(), Axis::Z, Outcome::Plus)])? / 8.0;
            }
            crate::bell::AxisClass::Pqss if pqss => total += 1.0 / 8.0,
            _ => {}
        }
    }
    Ok(total)
}

pub fn items() -> Result<Vec<GoldenItem>> {
    let w = w_state();
    let ghz = ghz_state();
    let mut out = Vec::new();
    let mut push = |name, expected, computed| {
        out.push(GoldenItem {
            name,
            expected,
            computed,
        })
    };

    push("W amplitude |z-z+z+>", 1.0 / 3f64.sqrt(), w.amplitude(4).re);
    push("tangle of GHZ", 1.0, three_tangle(&ghz)?);
    push("tangle of W", 0.0, three_tangle(&w)?);
    for (name, keep) in [
        ("PPT min eigenvalue of W pair AB", [0, 1]),
        ("PPT min eigenvalue of W pair BC", [1, 2]),
        ("PPT min eigenvalue of W pair AC", [0, 2]),
    ] {
        let pt = partial_transpose(&reduced_density(&w, &keep)?, Subsystem::Second)?;
        push(name, (1.0 - 5f64.sqrt()) / 6.0, eigenvalues_hermitian(&pt)?[0]);
    }

    let decider_minus = w.measure_qubit(2, Axis::Z, 0.9)?;
    push("Charlie z- on W (probability)", 1.0 / 3.0, decider_minus.probability);
    let decider_plus = w.measure_qubit(2, Axis::Z, 0.1)?;
    push("Charlie z+ on W (probability)", 2.0 / 3.0, decider_plus.probability);
    push(
        "AB pair after Charlie z+ is (|-+> + |+->)/sqrt2",
        std::f64::consts::FRAC_1_SQRT_2,
        decider_plus.state.amplitude(0b100).re,
    );

    push(
        "two z+ on W, at least two of three",
        1.0,
        prob_two_z_plus(&w, PairInterpretation::AtLeastTwo)?,
    );
    push(
        "two z+ on W, strict pair AB",
        1.0 / 3.0,
        prob_two_z_plus(&w, PairInterpretation::StrictPair(A, B))?,
    );
    push("z+ with x unequal on W (A | B,C)", 0.0, prob_z_plus_x_unequal(&w, A, (B, C))?);
    push("z+ with x unequal on W (B | A,C)", 0.0, prob_z_plus_x_unequal(&w, B, (A, C))?);
    push("z+ with x unequal on W (C | A,B)", 0.0, prob_z_plus_x_unequal(&w, C, (A, B))?);
    push("x-all-equal on W", 0.75, prob_x_all_equal(&w)?);
    push(
        "CH middle term on W, at least two",
        0.25,
        ch_middle_term(&w, PairInterpretation::AtLeastTwo, (A, B, C))?.value,
    );
    push(
        "CH middle term on W, strict pair",
        -5.0 / 12.0,
        ch_middle_term(&w, PairInterpretation::StrictPair(A, B), (A, B, C))?.value,
    );

    push("QKD-set probability", 3.0 / 8.0, AxisSet::all().filter(AxisSet::is_qkd).count() as f64 / 8.0);
    push("QKD key success given a QKD set", 2.0 / 3.0, analytic_success(&w, true, false)? / (3.0 / 8.0));
    push("QKD success probability", 0.25, analytic_success(&w, true, false)?);
    push("PQSS success probability", 0.125, analytic_success(&w, false, true)?);
    push("synthesis success probability", 0.375, analytic_success(&w, true, true)?);
    push(
        "synthesis share of QKD keys",
        2.0 / 3.0,
        analytic_success(&w, true, false)? / analytic_success(&w, true, true)?,
    );
    push(
        "PQSS single-share inference probability",
        1.0 / 3.0,
        w.joint_probability(&[(1, Axis::Z, Outcome::Minus)])?,
    );

    push("QKD qubits per key bit", 12.0, qubits_per_key_bit(0.25, QUBITS_PER_TRIAL)?);
    push("PQSS qubits per key bit", 24.0, qubits_per_key_bit(0.125, QUBITS_PER_TRIAL)?);
    push("synthesis qubits per key bit", 8.0, qubits_per_key_bit(0.375, QUBITS_PER_TRIAL)?);
    push("E91 qubits per key bit", 9.0, qubits_per_key_bit(E91.0, E91.1)?);
    push("HBB99 qubits per key bit", 6.0, qubits_per_key_bit(HBB99.0, HBB99.1)?);
    push(
        "separate E91 + HBB99 qubits per key bit",
        8.0,
        2.0 / 3.0 * qubits_per_key_bit(E91.0, E91.1)? + 1.0 / 3.0 * qubits_per_key_bit(HBB99.0, HBB99.1)?,
    );
    push(
        "QKD resource formula, M/N = 0, per key bit",
        12.0,
        key_accounting(1000.0, 0.25, 4000, 0, QUBITS_PER_TRIAL)?.paper / 1000.0,
    );

    let u = u_ce(AttackAngle::MAXIMAL);
    push("U_CE(pi/2) maps |z-z+> to |z+z->", 1.0, u[(1, 2)].re);
    let wp = w_prime(AttackAngle::MAXIMAL);
    push("W'(pi/2) amplitude |z+z+z+z->", 1.0 / 3f64.sqrt(), wp.amplitude(1).re);
    let coupled = apply_attack(
        &w,
        &AttackConfig::coupling(AttackAngle::MAXIMAL, C)?,
    )?;
    push("attack on Charlie reproduces W'(pi/2)", 0.0, coupled.max_abs_diff(&wp));
    push("Eve ancilla z- at pi/2", 1.0 / 3.0, eve_ancilla_statistics(&wp)?);
    push("security event xxz at pi/2", 1.0 / 6.0, security_event_probability(&wp, AxisSet::XXZ)?);
    push("security event zxx at pi/2", 1.0 / 3.0, security_event_probability(&wp, AxisSet::ZXX)?);
    push(
        "security event xxz at pi/4",
        1.0 / 12.0,
        security_event_probability(&w_prime(angle(PI / 4.0)), AxisSet::XXZ)?,
    );
    push(
        "security event zxx at pi/3",
        1.0 / 6.0,
        security_event_probability(&w_prime(angle(PI / 3.0)), AxisSet::ZXX)?,
    );
    push("averaged P_bar(pi/2)", 5.0 / 18.0, averaged_security_probability(angle(FRAC_PI_2)));
    push("averaged P_bar(pi/3)", 11.0 / 72.0, averaged_security_probability(angle(PI / 3.0)));
    push(
        "averaged P_bar(pi/2) from per-set values",
        5.0 / 18.0,
        AxisSet::QKD_SETS
            .iter()
            .map(|&a| security_event_probability(&wp, a))
            .sum::<Result<f64>>()?
            / 3.0,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_item_passes() {
        for item in items().unwrap() {
            assert!(item.passes(VERIFY_TOLERANCE), "{item:?}");
        }
    }
}
