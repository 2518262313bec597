// Eve couples an ancilla to Charlie's qubit. Stronger coupling means more
// announced trials where the decider sees z+ and the others disagree in x.
//
// `cargo run --example eavesdropping_sweep`

use wqsc::adversary::{apply_attack, eve_ancilla_statistics, AttackConfig};
use wqsc::bell::{security_event_probability, AxisSet};
use wqsc::states::{w_state, AttackAngle};
use wqsc::sweep::{sweep_phi, SweepConfig};
use wqsc::Party;

pub fn run_example() -> wqsc::Result<()> {
    let phi = AttackAngle::MAXIMAL;
    let attacked = apply_attack(&w_state(), &AttackConfig::coupling(phi, Party::Charlie)?)?;
    println!("phi = pi/2: Eve reads z- with probability {:.4}", eve_ancilla_statistics(&attacked)?);
    for axes in AxisSet::QKD_SETS {
        println!("  P(security event | {axes}) = {:.4}", security_event_probability(&attacked, axes)?);
    }

    let cfg = SweepConfig {
        trials: 20_000,
        seed: 4,
        announce_rate: 0.5,
        target: Party::Charlie,
        epsilon: 0.01,
    };
    let grid: Vec<f64> = (0..=4).map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / 4.0).collect();
    println!("{:>8} {:>8} {:>9} verdict", "phi", "P_bar", "observed");
    for row in sweep_phi(&grid, &cfg)? {
        println!(
            "{:>8.4} {:>8.4} {:>9.4} {:?}",
            row.phi,
            row.p_bar,
            row.empirical.unwrap_or(f64::NAN),
            row.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
