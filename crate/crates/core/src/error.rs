//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Matrices must have at least one row and one column.
    #[error("matrix must be non-empty, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    /// NaN or infinite entry encountered while building a matrix.
    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    /// Shapes or subsystem annotations do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Subsystem index outside the annotated dimension list.
    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    /// Input to the Hermitian eigensolver deviates too far from M = M†.
    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// Schmidt probability vector fails validation.
    #[error("invalid Schmidt vector: {0}")]
    InvalidSchmidt(String),

    /// Bell or Weyl label (u, v) outside 0..d.
    #[error("label (u={u}, v={v}) out of range for dimension {d}")]
    LabelOutOfRange { u: usize, v: usize, d: usize },

    /// Isotropic visibility outside [-1/(d²-1), 1].
    #[error("visibility {value} outside admissible interval [{min}, 1] for dimension {d}")]
    VisibilityOutOfRange { value: f64, min: f64, d: usize },

    /// Matrix fails the density-matrix contract (Hermitian, unit trace, PSD).
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    /// Fidelity outside [0, 1].
    #[error("invalid fidelity {0}: must lie in [0, 1]")]
    InvalidFidelity(f64),

    /// A post-measurement state was requested on a branch of probability 0.
    #[error("zero-probability branch (u={u}, v={v}) carries no post-measurement state")]
    ZeroProbabilityBranch { u: usize, v: usize },

    /// Composite dimension exceeds the dense-path cap.
    #[error("composite dimension {dim} exceeds the dense cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    /// Catch-all for invalid scalar arguments.
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
