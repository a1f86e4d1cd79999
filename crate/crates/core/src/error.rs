use thiserror::Error;

use crate::linalg::RankDecision;

/// Errors raised by the numerical kernels and the ICS pipelines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite input at ({row}, {col})")]
    NonFiniteInput { row: usize, col: usize },

    #[error("iterative kernel did not converge after {sweeps} sweeps")]
    Convergence { sweeps: usize },

    #[error("triangular factor is singular: zero diagonal at index {index}")]
    SingularTriangular { index: usize },

    #[error("diagonal magnitudes are not non-increasing at index {index}")]
    NotSorted { index: usize },

    /// Covariance is not numerically positive definite. `rcond` is the
    /// reciprocal condition number λ_min / λ_max of the covariance.
    #[error(
        "system is computationally singular: reciprocal condition number = {rcond:e} \
         (smallest eigenvalue {smallest:e} at index {index}, threshold {threshold:e})"
    )]
    SingularCovariance {
        smallest: f64,
        largest: f64,
        threshold: f64,
        index: usize,
        rcond: f64,
    },

    #[error("zero Mahalanobis distance with a negative weight exponent at observations {indices:?}")]
    ZeroDistance { indices: Vec<usize> },

    #[error("data is numerically rank deficient: rank {} of {}", .0.q, .0.r_diag_abs.len())]
    RankDeficient(RankDecision),

    #[error("all observations are equal")]
    DegenerateData,

    #[error("intrinsic condition number {intrinsic:e} already exceeds the target 10^{target}")]
    UnreachableCondition { intrinsic: f64, target: f64 },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "ShapeError",
            Error::NonFiniteInput { .. } => "NonFiniteInput",
            Error::Convergence { .. } => "ConvergenceError",
            Error::SingularTriangular { .. } => "SingularTriangular",
            Error::NotSorted { .. } => "NotSorted",
            Error::SingularCovariance { .. } => "SingularCovariance",
            Error::ZeroDistance { .. } => "ZeroDistance",
            Error::RankDeficient(_) => "RankDeficient",
            Error::DegenerateData => "DegenerateData",
            Error::UnreachableCondition { .. } => "UnreachableCondition",
            Error::InvalidSpec(_) => "InvalidSpec",
        }
    }

    /// Whether the error belongs to the expected numerical phenomenology
    /// (ill-conditioning, rank deficiency) rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. }
                | Error::SingularTriangular { .. }
                | Error::SingularCovariance { .. }
                | Error::ZeroDistance { .. }
                | Error::RankDeficient(_)
                | Error::DegenerateData
                | Error::UnreachableCondition { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
