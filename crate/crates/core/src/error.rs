use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    Dimension {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix data has length {actual}, expected {expected}")]
    Length { expected: usize, actual: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("function {label} is undefined or non-finite at {at}")]
    Domain { label: String, at: f64 },
    #[error("eigenvalue {eigenvalue:e} is below -{tolerance:e}; power {exponent} needs a positive semidefinite matrix")]
    Negative {
        eigenvalue: f64,
        tolerance: f64,
        exponent: f64,
    },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("function is not convex: {0}")]
    NotConvex(String),
    #[error("unknown function label {0:?}")]
    UnknownFunction(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("reproduction of {instance} failed: {detail}")]
    Reproduction { instance: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
