use thiserror::Error;

use crate::field::FieldKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),

    #[error("`{value}` is not an element of {field}")]
    BadFieldElement { value: String, field: FieldKind },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("comodules live over different corings")]
    CoringMismatch,

    #[error("not firm: {0}")]
    NotFirm(String),

    #[error("not an algebra morphism: {0}")]
    NotAlgebraMorphism(String),

    #[error("invalid comatrix coring context: {0}")]
    InvalidContext(String),

    #[error("canonical map is not an isomorphism (rank {rank} of {source_dim} -> {target_dim})")]
    NotGalois {
        rank: usize,
        source_dim: usize,
        target_dim: usize,
    },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("ring is not unital")]
    NotUnital,

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
