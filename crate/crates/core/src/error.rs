use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree n = {0} is not supported (the method requires n >= 6)")]
    UnsupportedDegree(i64),

    #[error("degree n = {n} is below the closed-form regime (requires n >= {min})")]
    OutsideAsymptoticRegime { n: u32, min: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{quantity} is undefined: {detail}")]
    Domain {
        quantity: &'static str,
        detail: String,
    },

    #[error("{0} overflows the binary64 range")]
    Overflow(&'static str),

    #[error("large-solution bound is inapplicable: {0}")]
    ThresholdFailed(String),

    #[error("invalid gap instance: {0}")]
    GapInstance(#[from] crate::gap::GapViolation),

    #[error("no valid parameter tuple found for n = {0}")]
    SearchFailed(u32),

    #[error("invalid trinomial form: {0}")]
    InvalidForm(String),

    #[error("form analysis failed: {0}")]
    Analysis(String),

    #[error("no exceptional points to assign {0} to")]
    NoExceptionalPoints(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("malformed record in {path}: {detail}")]
    Record { path: PathBuf, detail: String },

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
