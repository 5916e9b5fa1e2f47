use thiserror::Error;

/// Errors raised by the library. The CLI maps `Parse`/`Io`/`Json` to exit
/// code 2 and every other variant to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid partition {0:?}: entries must be strictly decreasing")]
    NotStrict(Vec<i64>),

    #[error("invalid orbit representative {0:?}: entries must be weakly decreasing")]
    NotWeaklyDecreasing(Vec<i64>),

    #[error("window margin too small: {0}")]
    Margin(String),

    #[error("not a Toeplitz operator within bound: {0}")]
    NotToeplitz(String),

    #[error("symbol recovery underdetermined, use a larger window: {0}")]
    Underdetermined(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("joint diagonalization degenerate ({0}); re-seed the generic combination")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for malformed input (as opposed to well-formed input outside an
    /// operation's domain).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Io(_) | Error::Json(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
