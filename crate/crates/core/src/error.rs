use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A configuration value is missing, malformed or out of range.
    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    /// A caller broke an operation's precondition (length mismatch, empty input).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown function `{id}` (valid: {valid})")]
    UnknownFunction { id: String, valid: String },

    #[error("unknown algorithm `{id}` (valid: {valid})")]
    UnknownAlgorithm { id: String, valid: String },

    #[error("neighbourhood is empty: population has {0} member(s)")]
    EmptyNeighbourhood(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { key: key.into(), message: message.into() }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }
}
