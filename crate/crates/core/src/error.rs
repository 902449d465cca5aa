//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (e.g. `n < 2`, zero samples, generator index out of range).
    #[error("domain error: {0}")]
    Domain(String),
    /// Matrix or coordinate-vector dimensions do not match.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A coordinate sits on (or too close to) a range boundary where the
    /// requested quantity degenerates.
    #[error("boundary precondition violated: {0}")]
    Boundary(String),
    /// The requested dimension exceeds what dense storage supports.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
