use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid url {raw:?}: {reason}")]
    Url { raw: String, reason: String },

    #[error("snapshot: {0}")]
    Snapshot(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("unknown node {0}")]
    UnknownNode(u32),

    #[error("unknown url id {0}")]
    UnknownUrl(u32),

    #[error("url set is empty")]
    EmptyUrlSet,

    #[error("no spreader of the selected urls carries any score")]
    ZeroDenominator,

    #[error("selected urls have no spreaders")]
    NoSpreaders,

    #[error("rankings cover different url sets")]
    MismatchedUrlSets,

    #[error("tie-breaker has no position for url id {0}")]
    MissingTieBreak(u32),

    #[error("requested {requested} urls but only {available} are available")]
    SelectionTooLarge { requested: usize, available: usize },

    #[error("separator needs both labels present")]
    SingleClass,

    #[error("infeasible synthetic spec: {0}")]
    InfeasibleSynth(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
