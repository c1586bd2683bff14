//! Error type shared across the analysis pipeline.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("project root {0:?} does not exist or is not a directory")]
    RootMissing(PathBuf),

    #[error("corpus root {0:?} contains no project subdirectories")]
    EmptyCorpus(PathBuf),

    #[error("config error: {0}")]
    Config(String),

    #[error("invalid exclude pattern {pattern:?}: {reason}")]
    BadExcludePattern { pattern: String, reason: String },

    #[error("{path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown report format {0:?} (expected text, json, or csv)")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
