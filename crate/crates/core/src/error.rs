use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("algebra axioms violated: {0}")]
    InvalidAlgebra(String),
    #[error("complex is not a complex: {0}")]
    InvalidComplex(String),
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("cyclic form is not compatible with the connection: {0}")]
    Incompatible(String),
    /// A precondition of a computation failed, e.g. a residual that should
    /// vanish did not.
    #[error("precondition failed: {0}")]
    Precondition(String),
}
