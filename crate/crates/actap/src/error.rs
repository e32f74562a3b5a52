use thiserror::Error;

/// Errors raised by simulator operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector or matrix had the wrong length for the chain it targets.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An input value was outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested quantity is undefined for this input (e.g. a null
    /// state with vanishing normalization).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// The spectrum lacks the structure an operation relies on (e.g. no
    /// zero eigenvalue to measure a gap from).
    #[error("protocol state error: {0}")]
    ProtocolState(String),
    /// Time stepping violated the norm-drift guard.
    #[error("integrator failure: {0}")]
    Integrator(String),
    /// Configuration file or flag set could not be turned into a run.
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: usage/validation problems exit 2,
    /// numerical failures exit 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_) | Error::Domain(_) | Error::Config(_) | Error::Io(_) => 2,
            Error::Degenerate(_) | Error::ProtocolState(_) | Error::Integrator(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
