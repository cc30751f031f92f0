use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated (bad mesh sizes, misaligned
    /// rectangles, mismatched spaces, ...). Maps to exit code 2 in the CLI.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The linear solver could not produce a solution.
    #[error("singular system{}: {detail}", .index.map(|i| format!(" (pivot index {i})")).unwrap_or_default())]
    Singular { index: Option<usize>, detail: String },

    /// Solver failure inside a Schwarz sweep, with iteration context.
    #[error("schwarz solve failed at sweep {sweep}, subdomain {subdomain}: {source}")]
    Schwarz {
        sweep: usize,
        subdomain: usize,
        #[source]
        source: Box<Error>,
    },

    /// Solver failure inside an adjoint cascade, with level context.
    #[error("adjoint solve failed at level {level}, subdomain {subdomain}: {source}")]
    Adjoint {
        level: usize,
        subdomain: usize,
        #[source]
        source: Box<Error>,
    },

    /// Interpolation target node lies outside the source function's support.
    #[error("point ({x}, {y}) is outside the source function's support")]
    OutsideSupport { x: f64, y: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors that indicate a bad configuration rather than a
    /// numerical failure (CLI exit code 2 vs 1).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
