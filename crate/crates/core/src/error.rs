use std::io;
use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported character {0:?}")]
    UnsupportedChar(char),

    #[error("line exceeds maximum time-steps ({got} > {max})")]
    LineTooLong { got: usize, max: usize },

    #[error("insufficient samples: found {found}, need at least {min} ({context})")]
    InsufficientSamples {
        found: usize,
        min: usize,
        context: String,
    },

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed {what} in {}: {msg}", path.display())]
    Format {
        what: &'static str,
        path: PathBuf,
        msg: String,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad user input (files, config, arguments)
    /// rather than runtime/numeric failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::UnsupportedChar(_)
                | Error::Io { .. }
                | Error::Format { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
