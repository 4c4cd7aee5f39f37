use thiserror::Error;

use crate::algebra::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} has a nonzero constant term")]
    NonzeroConstantTerm { what: String },

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("expected {expected} images, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("image {index} has a nonzero constant term, so the map is not local")]
    NonlocalImage { index: usize },

    #[error("relation `{relation}` is not sent into the target ideal (checked modulo degree {degree})")]
    NotWellDefinedAtDegree { degree: usize, relation: String },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("{0} is not a supported prime modulus")]
    InvalidField(u64),

    #[error("truncation degree must be at least 2, got {0}")]
    InvalidTruncation(usize),

    #[error("maps do not compose: {0}")]
    CompositionMismatch(String),

    #[error("square does not commute (checked modulo degree {degree})")]
    NonCommutative { degree: usize },

    #[error("variable {var} has zero linear coefficient and cannot be eliminated")]
    NotEliminable { var: usize },

    #[error("ideal lives over a different ring than expected")]
    RingMismatch,

    #[error("instance shape {found} does not match statement (expects {expected})")]
    ShapeMismatch { expected: String, found: String },

    #[error("instance generation gave up after {0} attempts")]
    GenerationExhausted(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
