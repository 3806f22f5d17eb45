use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration: bad counts, unknown shapes, empty inputs.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical failure such as a singular or badly conditioned system.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Forward solve failed for one incident direction.
    #[error("forward solve failed for direction {index}: {source}")]
    Direction {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed dataset: {0}")]
    Format(String),

    #[error("unsupported dataset version {found:?} (expected {expected:?})")]
    Version { found: String, expected: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
