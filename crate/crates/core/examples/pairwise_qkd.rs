// Pairwise key distribution: the z-measuring party decides which pair
// shares the bit, and the two keys always agree.
//
// `cargo run --example pairwise_qkd`

use wqsc::protocol::{Pair, ProtocolConfig, ProtocolMode, Run};

pub fn run_example() -> wqsc::Result<()> {
    let config = ProtocolConfig::new(ProtocolMode::Qkd, 20_000, 1).with_announce_rate(0.1);
    let run = Run::execute(config)?;
    let r = &run.report;
    println!(
        "{} trials, {} announced, {} key bits (success rate {:.4}, expected {:.4})",
        r.trials, r.announced, r.total_key_bits, r.success_rate.unwrap_or(f64::NAN), r.expected_success_rate
    );

    let keys = run.keys();
    for pair in Pair::ALL {
        let (first, _) = &keys.qkd[&pair];
        let preview: String = first.iter().take(24).map(|b| b.to_string()).collect();
        println!("{pair:?}: {:>5} bits  {preview}...", first.len());
    }
    println!("disagreements: {}", keys.qkd_disagreements());
    println!("security check: {:?} over {} announced trials", r.verdict, r.security_trials);
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
