// Qubits spent per key bit, compared with the two-qubit and GHZ baselines.
//
// `cargo run --example resource_accounting`

use wqsc::protocol::{
    key_accounting, qubits_per_key_bit, run_protocol, ProtocolConfig, ProtocolMode, E91, HBB99,
    QUBITS_PER_TRIAL,
};

pub fn run_example() -> wqsc::Result<()> {
    for mode in [ProtocolMode::Qkd, ProtocolMode::Pqss, ProtocolMode::Synth] {
        let asymptotic = qubits_per_key_bit(mode.success_probability(), QUBITS_PER_TRIAL)?;
        let r = run_protocol(&ProtocolConfig::new(mode, 20_000, 5).with_announce_rate(0.2))?;
        let account = key_accounting(
            r.total_key_bits as f64,
            mode.success_probability(),
            r.trials,
            r.announced,
            QUBITS_PER_TRIAL,
        )?;
        println!(
            "{mode:>5}: {asymptotic:>4} asymptotic, spent {} qubits, estimated {:.0} (1+M/N) / {:.0} (1-M/N)",
            r.qubits_consumed, account.paper, account.exact
        );
    }
    println!("E91:   {} qubits per bit", qubits_per_key_bit(E91.0, E91.1)?);
    println!("HBB99: {} qubits per bit", qubits_per_key_bit(HBB99.0, HBB99.1)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
