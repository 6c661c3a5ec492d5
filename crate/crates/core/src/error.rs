use thiserror::Error;

use crate::separation::ConditionReport;
use crate::subset::MAX_ELEMENTS;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGround,

    #[error("ground set has {0} elements; at most {MAX_ELEMENTS} are supported")]
    TooManyElements(usize),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("invalid element name `{0}`")]
    InvalidElementName(String),

    #[error("closure table has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("subset mask {mask:#x} is out of range for a {n}-element ground set")]
    MaskOutOfRange { mask: u32, n: usize },

    #[error("element index {index} is out of range for a {n}-element ground set")]
    ElementOutOfRange { index: usize, n: usize },

    #[error("operands live on different ground sets")]
    GroundMismatch,

    #[error("relation violates the reconstruction conditions: {0}")]
    ConditionsViolated(Box<ConditionReport>),

    #[error("universe needs {required} evaluations but the budget is {budget}")]
    UniverseTooLarge { required: u128, budget: u64 },

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("missing closure entry for subset `{0}`")]
    MissingSubsetKey(String),

    #[error("duplicate closure entry for subset `{0}`")]
    DuplicateSubsetKey(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("subset `{0}` is not written in canonical element order")]
    NonCanonicalSubset(String),

    #[error("duplicate pair {{{0}}} | {{{1}}}")]
    DuplicatePair(String, String),

    #[error("assignment has no image for element `{0}`")]
    PartialAssignment(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// True for errors caused by malformed or inconsistent input documents.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::ConditionsViolated(_) | Error::UniverseTooLarge { .. } | Error::UnknownClaim(_)
        )
    }
}
