// Probabilistic secret sharing with Bob as the dealer. Alice and Charlie
// rebuild his bit together; alone, a `-` share reveals it.
//
// `cargo run --example secret_sharing`

use wqsc::protocol::{partial_inference, reconstruct_dealer_bit, Inference, ProtocolConfig, ProtocolMode, Run};
use wqsc::Party;

pub fn run_example() -> wqsc::Result<()> {
    let config = ProtocolConfig::new(ProtocolMode::Pqss, 20_000, 2)
        .with_announce_rate(0.0)
        .with_dealer(Party::Bob);
    let run = Run::execute(config)?;
    let keys = run.keys();
    let (alice, charlie) = &keys.pqss_shares;

    for i in 0..5.min(alice.len()) {
        let rebuilt = reconstruct_dealer_bit(alice[i], charlie[i])?;
        println!(
            "secret {}  shares ({}, {})  rebuilt {}",
            keys.pqss_secret[i], alice[i], charlie[i], rebuilt
        );
    }
    let leaks = alice.iter().filter(|&&s| partial_inference(s) == Inference::DealerIsPlus).count();
    println!(
        "{} shared bits, {} reconstruction failures, Alice alone learns {:.3} of them",
        alice.len(),
        keys.pqss_failures(),
        leaks as f64 / alice.len() as f64
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
