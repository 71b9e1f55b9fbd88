use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by exact zero")]
    DivisionByZero,

    #[error("scalars from different fields (conductor {left} vs {right})")]
    ConductorMismatch { left: u32, right: u32 },

    /// A construction-time identity did not hold.
    #[error("invariant violated: {id}: {detail}")]
    Invariant { id: String, detail: String },

    /// A sign check of the ping-pong certificate failed.
    #[error("certificate check failed at k={k}, vector {vector}, entry {entry}: sign {sign}")]
    Certificate {
        k: usize,
        vector: String,
        entry: usize,
        sign: i8,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invariant(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invariant {
            id: id.into(),
            detail: detail.into(),
        }
    }
}
