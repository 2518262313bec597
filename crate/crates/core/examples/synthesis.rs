// One channel serving both tasks: the announced axes decide whether a
// trial feeds a pairwise key or the shared secret.
//
// `cargo run --example synthesis`

use wqsc::bell::AxisSet;
use wqsc::protocol::{run_protocol, synthesis_dispatch, ProtocolConfig, ProtocolMode};

pub fn run_example() -> wqsc::Result<()> {
    for axes in AxisSet::all() {
        println!("{axes}: {:?}", synthesis_dispatch(axes));
    }
    let r = run_protocol(&ProtocolConfig::new(ProtocolMode::Synth, 20_000, 3).with_announce_rate(0.0))?;
    println!(
        "key bits: {} pairwise + {} shared = {} (rate {:.4}, expected {:.4})",
        r.qkd_key_bits, r.pqss_key_bits, r.total_key_bits, r.success_rate.unwrap_or(f64::NAN), r.expected_success_rate
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
