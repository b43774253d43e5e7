use alloc::string::String;

use crate::expr::Primitive;

/// Errors raised by group arithmetic, evaluation and the derivative operators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Arguments do not belong to the expected group, or shapes disagree.
    #[error("domain error: {0}")]
    Domain(String),
    /// A point left the open set a function is defined on.
    #[error("point outside the function domain: {0}")]
    OutsideDomain(String),
    /// A primitive was applied outside its domain (e.g. `log` of a non-positive value).
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// The exact rational field cannot represent the requested operation.
    #[error("`{0}` has no exact rational evaluation")]
    NotExact(Primitive),
    /// Too many derivative generators were requested.
    #[error("multi-dual order {requested} exceeds the cap of {cap}")]
    Capacity { requested: usize, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
