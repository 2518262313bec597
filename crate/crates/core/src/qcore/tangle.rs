use super::StateVector;
use crate::error::{invalid_arg, Result};

/// Three-tangle of a pure three-qubit state.
///
/// Uses the Coffman–Kundu–Wootters residual tangle written through Cayley's
/// hyperdeterminant (Phys. Rev. A 61, 052306 (2000)):
///
/// ```text
/// τ = 4 |d1 − 2 d2 + 4 d3|
/// d1 = a000² a111² + a001² a110² + a010² a101² + a100² a011²
/// d2 = a000 a111 (a011 a100 + a101 a010 + a110 a001)
///    + a011 a100 (a101 a010 + a110 a001) + a101 a010 a110 a001
/// d3 = a000 a110 a101 a011 + a111 a001 a010 a100
/// ```
///
/// For a state `λ1|α1β1γ1> + λ2|α2β2γ2>` with orthonormal local bases this
/// gives `τ = (2 λ1 λ2)²`, so GHZ has τ = 1 while W and any state with an
/// unentangled qubit give 0.
pub fn three_tangle(state: &StateVector) -> Result<f64> {
    if state.num_qubits() != 3 {
        return Err(invalid_arg(format!(
            "three-tangle needs 3 qubits, got {}",
            state.num_qubits()
        )));
    }
    let a = |i: usize| state.amplitude(i);
    let (a000, a001, a010, a011) = (a(0), a(1), a(2), a(3));
    let (a100, a101, a110, a111) = (a(4), a(5), a(6), a(7));

    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001)
        + a011 * a100 * (a101 * a010 + a110 * a001)
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    Ok((4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()).clamp(0.0, 1.0))
}
