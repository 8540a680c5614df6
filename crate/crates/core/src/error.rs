use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("{what}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{0} contains a non-finite coordinate")]
    NonFinite(&'static str),

    #[error("direction b is zero")]
    ZeroDirection,

    #[error("direction b lies in the span of {0}")]
    DependentDirection(&'static str),

    #[error("subspace basis is linearly dependent (normalized Gram determinant {0:e})")]
    DependentBasis(f64),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("operation requires the euclidean_gram space")]
    GramOnly,

    #[error("grid oracle supports at most 3 free coefficients, got {0}")]
    TooManyCoefficients(usize),

    #[error("distance {0:e} too small for a certificate")]
    DegenerateDistance(f64),
}
