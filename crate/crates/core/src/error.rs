use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured resource cap would be exceeded.
    #[error("resource error: {what} exceeds the configured cap {cap}")]
    Resource { what: String, cap: u32 },

    /// A structurally invalid combinatorial object.
    #[error("validity error: {0}")]
    Validity(String),

    /// A search finished without a result.
    #[error("not found: {0}")]
    NotFound(String),

    /// An internal consistency check failed. Never expected to fire.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
