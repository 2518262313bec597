use super::{eigenvalues_hermitian, Amplitude, StateVector};
use crate::error::{invalid_arg, Error, Result};
use std::ops::{Index, IndexMut, Mul};

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Amplitude>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Amplitude::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            Amplitude::new(if r == c { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Amplitude) -> Self {
        let data = (0..dim * dim).map(|i| f(i / dim, i % dim)).collect();
        CMatrix { dim, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |r, c| {
            Amplitude::new(if r == c { diag[r] } else { 0.0 }, 0.0)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Amplitude> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim)) <= tol
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Amplitude;

    fn index(&self, (r, c): (usize, usize)) -> &Amplitude {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Amplitude {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix::from_fn(self.dim, |r, c| {
            (0..self.dim).map(|k| self[(r, k)] * rhs[(k, c)]).sum()
        })
    }
}

/// A validated one- or two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

const DENSITY_TOLERANCE: f64 = 1e-9;

impl DensityMatrix {
    /// Checks dimension, Hermiticity, unit trace and positivity.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.dim() != 2 && m.dim() != 4 {
            return Err(invalid_arg(format!(
                "density matrix dimension {} is not 2 or 4",
                m.dim()
            )));
        }
        if !m.is_hermitian(DENSITY_TOLERANCE) {
            return Err(Error::InvalidState("density matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOLERANCE || tr.im.abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = eigenvalues_hermitian(&m)?[0];
        if min < -DENSITY_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(DensityMatrix(m))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = Amplitude;

    fn index(&self, rc: (usize, usize)) -> &Amplitude {
        &self.0[rc]
    }
}

/// Partial trace of `|ψ><ψ|` keeping the listed qubits, in the listed order.
pub fn reduced_density(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.num_qubits();
    if keep.is_empty() || keep.len() > 2 {
        return Err(invalid_arg("keep one or two qubits"));
    }
    if keep.len() >= n {
        return Err(invalid_arg("the kept qubits must be a strict subset"));
    }
    if keep.iter().any(|&q| q >= n) || (keep.len() == 2 && keep[0] == keep[1]) {
        return Err(invalid_arg(format!("bad keep set {keep:?}")));
    }
    let masks: Vec<usize> = keep.iter().map(|&q| 1 << (n - 1 - q)).collect();
    let kept_mask: usize = masks.iter().sum();
    // local index of the kept qubits inside a global basis index
    let local = |i: usize| {
        masks
            .iter()
            .fold(0usize, |acc, &m| (acc << 1) | usize::from(i & m != 0))
    };
    let dim = 1 << keep.len();
    let mut rho = CMatrix::zeros(dim);
    let amps = state.amplitudes();
    for i in 0..amps.len() {
        for j in (0..amps.len()).filter(|&j| (i & !kept_mask) == (j & !kept_mask)) {
            rho[(local(i), local(j))] += amps[i] * amps[j].conj();
        }
    }
    DensityMatrix::new(rho)
}

/// Which tensor factor of a two-qubit operator to transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial transposition of a two-qubit density matrix.
pub fn partial_transpose(dm: &DensityMatrix, subsystem: Subsystem) -> Result<CMatrix> {
    if dm.dim() != 4 {
        return Err(invalid_arg("partial transpose needs a two-qubit density matrix"));
    }
    let m = dm.matrix();
    Ok(CMatrix::from_fn(4, |r, c| {
        let (a, b) = (r >> 1, r & 1);
        let (a2, b2) = (c >> 1, c & 1);
        match subsystem {
            Subsystem::First => m[((a2 << 1) | b, (a << 1) | b2)],
            Subsystem::Second => m[((a << 1) | b2, (a2 << 1) | b)],
        }
    }))
}
