//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, PodError>;

#[derive(Debug, Error)]
pub enum PodError {
    /// A grid's cells are inconsistent with the alphabet it is used with.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Tensor or grid extents do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An input is degenerate (e.g. an empty histogram).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Bad configuration: incompatible manifests, empty goal sets, out-of-range
    /// parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// A file exists but its contents do not parse (bad magic, digest
    /// mismatch, truncated payload, malformed text grid).
    #[error("format error: {0}")]
    Format(String),

    /// Non-finite values where finite ones are required.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Constructive generation could not satisfy its constraints.
    #[error("generation failed: {0}")]
    Generation(String),

    /// An API was driven out of order (e.g. backward before forward).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl PodError {
    /// Stable process exit code per error category. Usage errors from the
    /// argument parser itself exit with 2, so categories start at 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            PodError::Io(_) => 3,
            PodError::Config(_) => 4,
            PodError::Format(_) => 5,
            PodError::Numeric(_) => 6,
            PodError::Generation(_) => 7,
            PodError::InvalidGrid(_) | PodError::Shape(_) | PodError::Degenerate(_) => 8,
            PodError::Usage(_) => 9,
        }
    }
}
