use super::matrix::CMatrix;
use super::{Amplitude, Axis, Outcome};
use crate::error::{invalid_arg, Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;

pub const MAX_QUBITS: usize = 5;
/// Allowed deviation of the squared norm from 1 for a constructed state.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Looser bound accepted by `measure_qubit` before it refuses the input.
const MEASURE_NORM_TOLERANCE: f64 = 1e-6;

/// A normalized pure state of 1 to 5 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

/// Result of a projective single-qubit measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub outcome: Outcome,
    pub state: StateVector,
    pub probability: f64,
}

/// Builds the computational basis state `|bits[0] bits[1] ...>`.
pub fn make_basis_state(num_qubits: usize, bits: &[Outcome]) -> Result<StateVector> {
    check_qubit_count(num_qubits)?;
    if bits.len() != num_qubits {
        return Err(invalid_arg(format!(
            "expected {num_qubits} outcomes, got {}",
            bits.len()
        )));
    }
    let index = bits.iter().fold(0usize, |acc, b| (acc << 1) | b.bit());
    let mut amplitudes = vec![Amplitude::new(0.0, 0.0); 1 << num_qubits];
    amplitudes[index] = Amplitude::new(1.0, 0.0);
    Ok(StateVector {
        num_qubits,
        amplitudes,
    })
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(invalid_arg(format!(
            "qubit count {n} outside [1, {MAX_QUBITS}]"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Wraps amplitudes after checking the length and the normalization.
    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        if amplitudes.len() != 1 << num_qubits {
            return Err(invalid_arg(format!(
                "{} amplitudes cannot describe {num_qubits} qubits",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let state = StateVector {
            num_qubits,
            amplitudes,
        };
        let dev = (state.norm_sqr() - 1.0).abs();
        if dev > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "squared norm deviates from 1 by {dev:e}"
            )));
        }
        Ok(state)
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(num_qubits: usize, mut amplitudes: Vec<Amplitude>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::from_amplitudes(num_qubits, amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest component-wise distance to another state of the same size.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.num_qubits != other.num_qubits {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `self ⊗ other`, with `self` occupying the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let n = self.num_qubits + other.num_qubits;
        check_qubit_count(n)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Bit mask selecting `qubit` inside a basis index.
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(invalid_arg(format!(
                "qubit {qubit} out of range for a {}-qubit state",
                self.num_qubits
            )));
        }
        Ok(())
    }

    fn check_distinct(&self, qubits: impl IntoIterator<Item = usize>) -> Result<()> {
        let mut seen = 0usize;
        for q in qubits {
            self.check_qubit(q)?;
            if seen & (1 << q) != 0 {
                return Err(invalid_arg(format!("qubit {q} listed twice")));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    /// Applies the rank-one projector onto the `outcome` eigenstate of `axis`
    /// in place, without renormalizing.
    fn project_in_place(amps: &mut [Amplitude], mask: usize, axis: Axis, outcome: Outcome) {
        for i0 in (0..amps.len()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            match axis {
                Axis::Z => match outcome {
                    Outcome::Plus => amps[i1] = Amplitude::new(0.0, 0.0),
                    Outcome::Minus => amps[i0] = Amplitude::new(0.0, 0.0),
                },
                Axis::X => {
                    let s = outcome.sign();
                    // <x±|ψ> on this pair, then |x±> times that overlap
                    let overlap = (amps[i0] + amps[i1] * s) * FRAC_1_SQRT_2;
                    amps[i0] = overlap * FRAC_1_SQRT_2;
                    amps[i1] = overlap * (s * FRAC_1_SQRT_2);
                }
            }
        }
    }

    /// Projective measurement of one qubit. The outcome is `Plus` iff
    /// `u < P(Plus)`, so the call is a pure function of its arguments.
    pub fn measure_qubit(&self, qubit: usize, axis: Axis, u: f64) -> Result<Measurement> {
        self.check_qubit(qubit)?;
        let dev = (self.norm_sqr() - 1.0).abs();
        if dev > MEASURE_NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "cannot measure a state whose squared norm deviates by {dev:e}"
            )));
        }
        if !(0.0..1.0).contains(&u) {
            return Err(invalid_arg(format!("uniform draw {u} outside [0, 1)")));
        }
        let mask = self.mask(qubit);
        let mut plus = self.amplitudes.clone();
        Self::project_in_place(&mut plus, mask, axis, Outcome::Plus);
        let p_plus = plus.iter().map(|a| a.norm_sqr()).sum::<f64>().min(1.0);

        let (outcome, mut amps, probability) = if u < p_plus {
            (Outcome::Plus, plus, p_plus)
        } else {
            let mut minus = self.amplitudes.clone();
            Self::project_in_place(&mut minus, mask, axis, Outcome::Minus);
            let p = minus.iter().map(|a| a.norm_sqr()).sum::<f64>();
            (Outcome::Minus, minus, p)
        };
        if probability <= 0.0 {
            return Err(Error::NumericFailure(format!(
                "selected outcome {outcome} has zero probability"
            )));
        }
        let scale = probability.sqrt();
        for a in &mut amps {
            *a /= scale;
        }
        Ok(Measurement {
            outcome,
            state: StateVector {
                num_qubits: self.num_qubits,
                amplitudes: amps,
            },
            probability,
        })
    }

    /// Exact probability that every listed qubit yields the listed outcome
    /// along the listed axis. Computed by projection, never by sampling.
    pub fn joint_probability(&self, constraints: &[(usize, Axis, Outcome)]) -> Result<f64> {
        self.check_distinct(constraints.iter().map(|c| c.0))?;
        let mut amps = self.amplitudes.clone();
        for &(q, axis, outcome) in constraints {
            Self::project_in_place(&mut amps, self.mask(q), axis, outcome);
        }
        Ok(amps.iter().map(|a| a.norm_sqr()).sum())
    }

    /// `<ψ| ⊗_k P_k |ψ>` for a product of Pauli Z/X operators on distinct qubits.
    pub fn pauli_expectation(&self, ops: &[(usize, Axis)]) -> Result<f64> {
        self.check_distinct(ops.iter().map(|o| o.0))?;
        let mut amps = self.amplitudes.clone();
        for &(q, axis) in ops {
            let mask = self.mask(q);
            match axis {
                Axis::Z => amps
                    .iter_mut()
                    .enumerate()
                    .filter(|(i, _)| i & mask != 0)
                    .for_each(|(_, a)| *a = -*a),
                Axis::X => {
                    for i0 in (0..amps.len()).filter(|i| i & mask == 0) {
                        amps.swap(i0, i0 | mask);
                    }
                }
            }
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&amps)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    /// Applies a 4×4 unitary to the ordered qubit pair `(first, second)`.
    /// The gate's local basis index is `2·bit(first) + bit(second)`.
    pub fn apply_two_qubit(&self, gate: &CMatrix, first: usize, second: usize) -> Result<StateVector> {
        if gate.dim() != 4 {
            return Err(invalid_arg("two-qubit gate must be 4x4"));
        }
        self.check_distinct([first, second])?;
        let (m1, m2) = (self.mask(first), self.mask(second));
        let mut out = self.amplitudes.clone();
        for base in (0..self.amplitudes.len()).filter(|i| i & (m1 | m2) == 0) {
            let idx = [base, base | m2, base | m1, base | m1 | m2];
            for (row, &target) in idx.iter().enumerate() {
                out[target] = idx
                    .iter()
                    .enumerate()
                    .map(|(col, &src)| gate[(row, col)] * self.amplitudes[src])
                    .sum();
            }
        }
        StateVector::normalized(self.num_qubits, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Outcome::{Minus as M, Plus as P};

    fn amp(re: f64) -> Amplitude {
        Amplitude::new(re, 0.0)
    }

    fn w() -> StateVector {
        let s = 1.0 / 3f64.sqrt();
        let mut a = vec![amp(0.0); 8];
        a[4] = amp(s);
        a[2] = amp(s);
        a[1] = amp(s);
        StateVector::from_amplitudes(3, a).unwrap()
    }

    #[test]
    fn basis_state_indices() {
        let idx = |s: &StateVector| s.amplitudes().iter().position(|a| a.re == 1.0).unwrap();
        assert_eq!(idx(&make_basis_state(3, &[P, P, P]).unwrap()), 0);
        assert_eq!(idx(&make_basis_state(3, &[M, P, P]).unwrap()), 4);
        assert_eq!(idx(&make_basis_state(4, &[P, P, M, M]).unwrap()), 3);
    }

    #[test]
    fn basis_state_rejects_bad_lengths() {
        assert!(matches!(
            make_basis_state(3, &[P, P]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(make_basis_state(6, &[P; 6]).is_err());
        assert!(make_basis_state(0, &[]).is_err());
    }

    #[test]
    fn from_amplitudes_checks_norm() {
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![amp(1.0), amp(1.0)]),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn measuring_charlie_on_w() {
        let m = w().measure_qubit(2, Axis::Z, 0.9).unwrap();
        assert_eq!(m.outcome, M);
        assert!((m.probability - 1.0 / 3.0).abs() < 1e-12);
        let expect = make_basis_state(3, &[P, P, M]).unwrap();
        assert!(m.state.max_abs_diff(&expect) < 1e-12);

        let m = w().measure_qubit(2, Axis::Z, 0.1).unwrap();
        assert_eq!(m.outcome, P);
        assert!((m.probability - 2.0 / 3.0).abs() < 1e-12);
        let h = FRAC_1_SQRT_2;
        let mut a = vec![amp(0.0); 8];
        a[4] = amp(h);
        a[2] = amp(h);
        assert!(m.state.max_abs_diff(&StateVector::from_amplitudes(3, a).unwrap()) < 1e-12);
    }

    #[test]
    fn measuring_an_eigenstate_is_certain() {
        let s = make_basis_state(3, &[P, P, P]).unwrap();
        for u in [0.0, 0.5, 0.999_999] {
            let m = s.measure_qubit(0, Axis::Z, u).unwrap();
            assert_eq!(m.outcome, P);
            assert_eq!(m.probability, 1.0);
            assert_eq!(m.state, s);
        }
    }

    #[test]
    fn measure_rejects_unnormalized() {
        let bad = StateVector {
            num_qubits: 1,
            amplitudes: vec![amp(1.0), amp(0.1)],
        };
        assert!(matches!(
            bad.measure_qubit(0, Axis::Z, 0.3),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn joint_probability_on_w() {
        let w = w();
        let p = w
            .joint_probability(&[(0, Axis::Z, P), (1, Axis::Z, P), (2, Axis::Z, M)])
            .unwrap();
        assert!((p - 1.0 / 3.0).abs() < 1e-12);
        let p = w
            .joint_probability(&[(0, Axis::Z, P), (1, Axis::X, P), (2, Axis::X, M)])
            .unwrap();
        assert!(p.abs() < 1e-12);
        let p = w
            .joint_probability(&[(0, Axis::X, P), (1, Axis::X, P), (2, Axis::X, P)])
            .unwrap();
        assert!((p - 3.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn joint_probability_rejects_duplicates() {
        assert!(matches!(
            w().joint_probability(&[(0, Axis::Z, P), (0, Axis::X, P)]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn pauli_expectations_of_basis_and_x_states() {
        let zero = make_basis_state(1, &[P]).unwrap();
        assert_eq!(zero.pauli_expectation(&[(0, Axis::Z)]).unwrap(), 1.0);
        assert_eq!(zero.pauli_expectation(&[(0, Axis::X)]).unwrap(), 0.0);
        let plus =
            StateVector::from_amplitudes(1, vec![amp(FRAC_1_SQRT_2), amp(FRAC_1_SQRT_2)]).unwrap();
        assert!((plus.pauli_expectation(&[(0, Axis::X)]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swap_gate_moves_the_excitation() {
        let mut swap = CMatrix::zeros(4);
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(r, c)] = amp(1.0);
        }
        let s = make_basis_state(3, &[M, P, P]).unwrap();
        let out = s.apply_two_qubit(&swap, 0, 2).unwrap();
        assert_eq!(out, make_basis_state(3, &[P, P, M]).unwrap());
    }
}
