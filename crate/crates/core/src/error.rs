use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("register mismatch: {left} vs {right}")]
    RegisterMismatch { left: String, right: String },

    #[error("empty operator: {0}")]
    EmptyOperator(String),

    #[error("generator {index} is not skew-Hermitian (largest real part {real_part:e})")]
    NotSkewHermitian { index: usize, real_part: f64 },

    #[error("Lie closure exceeded {max_dim} dimensions while bracketing generator {generator} with element {element}")]
    DimensionOverflow {
        max_dim: usize,
        generator: usize,
        element: usize,
    },

    #[error("eigenvalue clusters could not be separated for shape {shape} after {attempts} seeds")]
    EigenvalueClusters { shape: String, attempts: usize },

    #[error("operator leaks out of invariant subspace (leakage {leakage:e})")]
    SymmetryViolation { leakage: f64 },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
