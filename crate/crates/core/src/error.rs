use thiserror::Error;

/// Errors surfaced by the library.
///
/// The split mirrors how callers have to react: `Usage` means the caller
/// violated a documented precondition, `Capacity` means the request is
/// outside the supported desk-scale envelope, `Precision` means the floating
/// point oracle could not certify its answer (exact code paths never raise
/// it), and `Internal` means a checked invariant failed and the result would
/// have been garbage.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("capacity: {0}")]
    Capacity(String),

    #[error("precision: {0}")]
    Precision(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Error {
        Error::Usage(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Error {
        Error::Capacity(msg.into())
    }

    pub fn precision(msg: impl Into<String>) -> Error {
        Error::Precision(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
}
