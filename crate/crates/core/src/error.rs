use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input is not a Hopf algebra: {0}")]
    AxiomFailure(String),
    #[error("objects live over different Hopf algebras")]
    HostMismatch,
    #[error("left convolution inverse is not a right inverse")]
    OneSidedInverse,
    #[error("not a 2-cocycle: {0}")]
    NotACocycle(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid structure: {0}")]
    StructureInvalid(String),
    #[error("characteristic 2 is not supported")]
    CharTwoUnsupported,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
