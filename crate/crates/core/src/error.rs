use thiserror::Error;

/// Everything that can go wrong short of a numerical bug: shape mismatches,
/// invalid subsystem bookkeeping, parameters outside their documented ranges,
/// and validation failures on states that claim to be physical.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square of side {expected}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix not Hermitian: ||H - H^dag||_F = {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("trace {trace:.12e} differs from 1 by more than {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("minimum eigenvalue {lambda_min:.3e} below -{tol:.3e}")]
    NotPositive { lambda_min: f64, tol: f64 },

    #[error("state vector norm {norm:.12e} differs from 1 by more than {tol:.3e}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("invalid subsystem dimensions {dims:?} (every dimension must be >= 2)")]
    BadDims { dims: Vec<usize> },

    #[error("composite dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("invalid bipartition {left:?} of {n} subsystems (need a nonempty proper subset)")]
    BadBipartition { left: Vec<usize>, n: usize },

    #[error("subsystem index {index} out of range for {n} subsystems")]
    SubsystemOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("parameter out of range: {0}")]
    BadParameter(String),

    #[error("no sign change on bracket [{a}, {b}]: f(a) = {fa:.6e}, f(b) = {fb:.6e}")]
    NoSignChange { a: f64, b: f64, fa: f64, fb: f64 },

    #[error("malformed state or channel file: {0}")]
    BadFile(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
