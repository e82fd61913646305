use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inadmissible input.
    #[error("input error: {0}")]
    Input(String),
    /// A guard on enumeration size or rank was exceeded.
    #[error("refused: {0}")]
    Guard(String),
    /// The request is outside what the toolkit supports.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal invariant failed; never silently resolved.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Guard(_) | Error::Unsupported(_) => 1,
            Error::Invariant(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
