//! Cyclic Jacobi diagonalization of small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then zeroes the now-real pivot with a real Givens rotation.

use super::{Amplitude, CMatrix};
use crate::error::{invalid_arg, Error, Result};

/// Off-diagonal Frobenius norm, relative to the matrix scale, at which the
/// sweep loop stops.
pub const EIGEN_TOLERANCE: f64 = 1e-12;
const HERMITIAN_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 64;
const MAX_DIM: usize = 32;

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.dim();
    (0..n)
        .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
        .map(|rc| m[rc].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Eigenvalues in ascending order with the matching unit eigenvectors stored
/// as the columns of the returned matrix.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = m.dim();
    if n == 0 || n > MAX_DIM {
        return Err(invalid_arg(format!("matrix dimension {n} unsupported")));
    }
    if !m.is_hermitian(HERMITIAN_TOLERANCE) {
        return Err(invalid_arg("matrix is not Hermitian"));
    }
    // symmetrize so the rounding residue does not stall convergence
    let mut a = CMatrix::from_fn(n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut vectors = CMatrix::identity(n);
    let scale = a
        .diagonal()
        .iter()
        .map(|d| d.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(off_diagonal_norm(&a))
        .max(1.0);

    let mut converged = off_diagonal_norm(&a) <= EIGEN_TOLERANCE * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericFailure(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // rotation = diag(1, .., conj(phase) at q, ..) · Givens(p, q)
                let mut rot = CMatrix::identity(n);
                rot[(p, p)] = Amplitude::new(c, 0.0);
                rot[(p, q)] = Amplitude::new(s, 0.0);
                rot[(q, p)] = phase.conj() * -s;
                rot[(q, q)] = phase.conj() * c;
                a = &(&rot.adjoint() * &a) * &rot;
                a[(p, q)] = Amplitude::new(0.0, 0.0);
                a[(q, p)] = Amplitude::new(0.0, 0.0);
                vectors = &vectors * &rot;
            }
        }
        converged = off_diagonal_norm(&a) <= EIGEN_TOLERANCE * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let sorted = CMatrix::from_fn(n, |r, c| vectors[(r, order[c])]);
    Ok((values, sorted))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eigenvalues_hermitian(m: &CMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|(values, _)| values)
}
