#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wqsc::qcore::{eigh, reduced_density, Amplitude, CMatrix, StateVector};
use wqsc::{Axis, Outcome};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random pure state from normalized complex Gaussians.
pub fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
    let amps = (0..1 << n)
        .map(|_| Amplitude::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(n, amps).unwrap()
}

pub fn random_product_state(n: usize, rng: &mut impl Rng) -> StateVector {
    (1..n).fold(random_state(1, rng), |acc, _| {
        acc.tensor(&random_state(1, rng)).unwrap()
    })
}

/// Random unitary from Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let mut cols: Vec<Vec<Amplitude>> = Vec::new();
    while cols.len() < dim {
        let mut v: Vec<Amplitude> = (0..dim)
            .map(|_| Amplitude::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for c in &cols {
            let overlap: Amplitude = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= overlap * ci;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    CMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// Every outcome string of length `k`, first entry varying slowest.
pub fn outcome_strings(k: usize) -> impl Iterator<Item = Vec<Outcome>> {
    (0..1usize << k).map(move |i| (0..k).map(|q| Outcome::from_bit((i >> (k - 1 - q)) & 1)).collect())
}

/// Brute-force oracle: sum `joint_probability` over all outcome strings of
/// the three honest qubits measured along `axes` that satisfy `event`.
pub fn enumerate3(
    state: &StateVector,
    axes: [Axis; 3],
    event: impl Fn(&[Outcome]) -> bool,
) -> f64 {
    outcome_strings(3)
        .filter(|o| event(o))
        .map(|o| {
            let c: Vec<_> = (0..3).map(|q| (q, axes[q], o[q])).collect();
            state.joint_probability(&c).unwrap()
        })
        .sum()
}

fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let (vals, vecs) = eigh(m).unwrap();
    let d: Vec<f64> = vals.iter().map(|v| v.max(0.0).sqrt()).collect();
    &(&vecs * &CMatrix::from_real_diagonal(&d)) * &vecs.adjoint()
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &CMatrix) -> f64 {
    // σy ⊗ σy in the |00>,|01>,|10>,|11> basis is the anti-diagonal (-1, 1, 1, -1)
    let yy = CMatrix::from_fn(4, |r, c| {
        Amplitude::new(
            match (r, c) {
                (0, 3) | (3, 0) => -1.0,
                (1, 2) | (2, 1) => 1.0,
                _ => 0.0,
            },
            0.0,
        )
    });
    let conj = CMatrix::from_fn(4, |r, c| rho[(r, c)].conj());
    let tilde = &(&yy * &conj) * &yy;
    let s = sqrt_psd(rho);
    let inner = &(&s * &tilde) * &s;
    let mut lambdas: Vec<f64> = eigh(&inner)
        .unwrap()
        .0
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Three-tangle through the monogamy relation τ = C²_A(BC) − C²_AB − C²_AC.
pub fn tangle_by_concurrences(state: &StateVector) -> f64 {
    let rho_a = reduced_density(state, &[0]).unwrap();
    let m = rho_a.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let ab = concurrence(reduced_density(state, &[0, 1]).unwrap().matrix());
    let ac = concurrence(reduced_density(state, &[0, 2]).unwrap().matrix());
    4.0 * det - ab * ab - ac * ac
}

/// Binomial three-sigma check.
pub fn within_3_sigma(successes: u64, trials: u64, p: f64) -> bool {
    let n = trials as f64;
    let sigma = (p * (1.0 - p) / n).sqrt();
    (successes as f64 / n - p).abs() <= 3.0 * sigma
}
