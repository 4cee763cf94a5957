use thiserror::Error;

/// Errors from IO, parsing and the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] netprop_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format { line, message: message.into() }
    }

    /// Process exit code: 2 parameter, 3 connectivity, 4 capacity, 1 other.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Core(netprop_core::Error::Parameter(_)) => 2,
            Error::Core(netprop_core::Error::Disconnected) => 3,
            Error::Core(netprop_core::Error::Capacity { .. }) => 4,
            _ => 1,
        }
    }
}
