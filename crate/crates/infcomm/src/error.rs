use thiserror::Error;

/// Errors raised while building graphs or validating query parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("missing weight for vertex `{0}`")]
    MissingWeight(String),

    #[error("weight of vertex `{label}` is not finite ({value})")]
    NonFiniteWeight { label: String, value: f64 },

    #[error("vertex `{0}` has more than one weight entry")]
    DuplicateWeight(String),

    #[error("edge endpoint {index} is out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, n: usize },

    #[error("gamma must be at least {min}, got {got}")]
    InvalidGamma { got: usize, min: usize },

    #[error("k must be at least 1")]
    InvalidK,

    #[error("growth ratio delta must be a finite value greater than 1, got {0}")]
    InvalidDelta(f64),

    #[error("graph has {n} vertices, exceeding the oracle bound of {max}")]
    OracleBound { n: usize, max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
