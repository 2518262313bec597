// W versus GHZ: zero three-tangle, yet every pair is entangled.
//
// `cargo run --example w_state_entanglement`

use wqsc::qcore::{eigenvalues_hermitian, partial_transpose, reduced_density, three_tangle, Subsystem};
use wqsc::states::{ghz_state, w_state};

pub fn run_example() -> wqsc::Result<()> {
    println!("three-tangle  GHZ = {:.6}", three_tangle(&ghz_state())?);
    println!("three-tangle  W   = {:.6}", three_tangle(&w_state())?);

    for (keep, label) in [([0, 1], "AB"), ([1, 2], "BC"), ([0, 2], "AC")] {
        let rho = reduced_density(&w_state(), &keep)?;
        let pt = partial_transpose(&rho, Subsystem::Second)?;
        let min = eigenvalues_hermitian(&pt)?[0];
        let verdict = if min < 0.0 { "entangled" } else { "PPT" };
        println!("W pair {label}: min eigenvalue of partial transpose = {min:+.6} ({verdict})");
    }
    println!("expected (1-sqrt5)/6 = {:+.6}", (1.0 - 5f64.sqrt()) / 6.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
