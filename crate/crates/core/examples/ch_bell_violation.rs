// The CH-type combination on |W⟩ under both readings of the first term.
//
// `cargo run --example ch_bell_violation`

use wqsc::bell::{ch_middle_term, prob_x_all_equal, prob_z_plus_x_unequal, PairInterpretation};
use wqsc::states::w_state;
use wqsc::Party::{Alice, Bob, Charlie};

pub fn run_example() -> wqsc::Result<()> {
    let w = w_state();
    println!("P(z_A=+, x_B != x_C) = {:.3}", prob_z_plus_x_unequal(&w, Alice, (Bob, Charlie))?.max(0.0));
    println!("P(z_B=+, x_A != x_C) = {:.3}", prob_z_plus_x_unequal(&w, Bob, (Alice, Charlie))?.max(0.0));
    println!("P(x_A = x_B = x_C)   = {:.3}", prob_x_all_equal(&w)?);

    let roles = (Alice, Bob, Charlie);
    for (label, interp) in [
        ("at least two z+", PairInterpretation::AtLeastTwo),
        ("z_A = z_B = +", PairInterpretation::StrictPair(Alice, Bob)),
    ] {
        let t = ch_middle_term(&w, interp, roles)?;
        println!(
            "{label:>16}: A11={:.4} value={:+.4} violates local bound: {}",
            t.a11,
            t.value,
            t.violates(1e-12)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> wqsc::Result<()> {
    run_example()
}
