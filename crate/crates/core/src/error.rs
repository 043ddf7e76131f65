use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Verification *failures* are not errors: they are reported through
/// [`crate::defect::VerificationReport`]. These variants cover malformed
/// input and violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed simplex {0:?}: {1}")]
    MalformedSimplex(Vec<usize>, String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("degree undefined: {0}")]
    DegreeUndefined(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
