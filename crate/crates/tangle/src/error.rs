use thiserror::Error;

use crate::mat::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension {rows}x{cols} outside the supported sizes 1, 2, 4, 8")]
    SizeLimit { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not self-adjoint (residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },

    #[error("expected a {expected}-tagged input, got {got}")]
    FieldMismatch { expected: Field, got: Field },

    #[error("real-tagged data carries a nonzero imaginary part ({im:.3e} at entry {index})")]
    RealTagViolation { index: usize, im: f64 },

    #[error("expected {expected} tensor factors, got {got}")]
    FactorCount { expected: &'static str, got: usize },

    #[error("state vector is not normalized (residual {residual:.3e})")]
    NotNormalized { residual: f64 },

    #[error("invalid density matrix: check `{check}` failed with residual {residual:.3e}")]
    InvalidDensity { check: &'static str, residual: f64 },

    #[error("unknown catalog state `{0}`")]
    UnknownCatalog(String),

    #[error("factor index {index} out of range for {n_factors} factors")]
    FactorRange { index: usize, n_factors: usize },

    #[error("factor subset {0:?} is not a sorted, non-empty set of distinct in-range indices")]
    FactorSubset(Vec<usize>),

    #[error("rank {rank} out of range 1..={max}")]
    RankRange { rank: usize, max: usize },

    #[error("matrix is not an isometry (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("decomposition cardinality {m} is below the state rank {rank}")]
    CardinalityTooSmall { m: usize, rank: usize },

    #[error("{context}: numerical check failed (residual {residual:.3e})")]
    Numerical {
        context: &'static str,
        residual: f64,
    },
}
