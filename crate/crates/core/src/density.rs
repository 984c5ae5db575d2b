//! Density matrices and the von Neumann form of the Jensen-Shannon divergence.
//!
//! Entropies are taken through the spectrum of the Hermitian eigenproblem; no
//! matrix logarithm is formed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::PureState;
use crate::simplex::ProbVec;
use crate::tol;

/// Hermitian, positive semidefinite, unit-trace complex matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Only the Hermitian part `(A + A^H)/2` is read.
pub fn hermitian_eigenvalues(a: &DMatrix<Complex64>) -> Vec<f64> {
    let sym = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

impl DensityMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: n,
                right: matrix.ncols(),
            });
        }
        if n < 2 {
            return Err(Error::InvalidState(format!("density matrix needs dimension ≥ 2, got {n}")));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite matrix entry".into()));
        }
        let deviation = (&matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > tol::HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix);
        let min_eigenvalue = eigenvalues[0];
        if min_eigenvalue < -tol::PSD {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, eigenvalues })
    }

    /// Builds from row-major entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// The projector `|Ψ><Ψ|`.
    pub fn from_pure_state(state: &PureState) -> Self {
        let a = state.amplitudes();
        let n = a.len();
        let matrix = DMatrix::from_fn(n, n, |i, j| a[i] * a[j].conj());
        Self::new(matrix).expect("projector onto a normalized state is a density matrix")
    }

    /// `diag(p)`.
    pub fn diagonal(p: &ProbVec) -> Self {
        let n = p.len();
        let v = p.as_slice();
        let matrix = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(v[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(matrix).expect("diagonal of a probability vector is a density matrix")
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Spectrum in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Equal-weight mixture (ρ1 + ρ2)/2.
    pub fn mix(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Self::new((&self.matrix + &other.matrix) * Complex64::new(0.5, 0.0))
    }

    /// `U ρ U^H`.
    pub fn conjugated(&self, unitary: &DMatrix<Complex64>) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: unitary.nrows(),
            });
        }
        Self::new(unitary * &self.matrix * unitary.adjoint())
    }

    /// Frobenius distance `‖ρ1 - ρ2‖_F`.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok((&self.matrix - &other.matrix).norm())
    }
}

/// `-Tr(ρ ln ρ)` in nats, via `-Σ λ ln λ` over the spectrum (0 ln 0 = 0).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let h: f64 = rho
        .eigenvalues
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum();
    h.max(0.0)
}

/// `H((ρ1+ρ2)/2) - H(ρ1)/2 - H(ρ2)/2`; finite for every pair of valid inputs.
pub fn quantum_jsd(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    let mid = rho1.mix(rho2)?;
    let v = von_neumann_entropy(&mid) - 0.5 * von_neumann_entropy(rho1) - 0.5 * von_neumann_entropy(rho2);
    Ok(v.max(0.0))
}
