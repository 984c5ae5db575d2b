//! Validation tolerances shared across modules.

/// Simplex membership: entries in `[0, 1]` and sum to 1.
pub const SIMPLEX: f64 = 1e-9;

/// Pure-state normalization and ray equality.
pub const STATE_NORM: f64 = 1e-9;

/// Entrywise deviation of a basis Gram matrix from the identity.
pub const GRAM: f64 = 1e-9;

/// Entrywise Hermiticity of a density matrix.
pub const HERMITIAN: f64 = 1e-9;

/// Density-matrix trace.
pub const TRACE: f64 = 1e-9;

/// Most negative eigenvalue accepted as positive semidefinite roundoff.
pub const PSD: f64 = 1e-10;
