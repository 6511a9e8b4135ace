use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("contact structures need odd dimension, got {0}")]
    EvenDimension(usize),

    #[error("eta does not equal g(., xi) at index {index}")]
    EtaMismatch { index: usize },

    #[error("deformation parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: String },

    #[error("Hessian of the candidate gradient is not symmetric at ({i}, {j})")]
    AsymmetricHessian { i: usize, j: usize },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("index {index} out of range 1..={dim} at {path}")]
    IndexOutOfRange { path: String, index: i64, dim: usize },

    #[error("metric matrix is not symmetric at ({i}, {j})")]
    AsymmetricMetricInput { i: usize, j: usize },
}
