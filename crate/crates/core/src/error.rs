use thiserror::Error;

/// Errors reported by validation and dimension checks.
///
/// Numerical payloads are carried as `f64` regardless of the scalar type the
/// computation ran in, so the error type stays non-generic.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error(
        "matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} is below -{tol:.3e}"
    )]
    NotPositive { eigenvalue: f64, tol: f64 },

    #[error("trace is {trace:.12}, not 1 within tolerance {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("Kraus operator list is empty")]
    EmptyKrausList,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("channel is not trace preserving: completeness defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotTracePreserving { defect: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("labels {found:?} do not match expected {expected:?}")]
    WrongLabels {
        found: Vec<String>,
        expected: Vec<String>,
    },

    #[error("unknown label {label:?}; state has {available:?}")]
    UnknownLabel {
        label: String,
        available: Vec<String>,
    },

    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("vector norm deviates from 1 by {defect:.3e}")]
    NotNormalized { defect: f64 },

    #[error("entries must be finite")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
