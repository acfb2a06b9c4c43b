use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8: {0}")]
    Decode(#[from] std::str::Utf8Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid semantic field: {0}")]
    InvalidField(String),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("empty context: no message contains a keyword of the semantic field")]
    EmptyContext,

    #[error("unknown object id {0:?}")]
    UnknownObject(String),

    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),

    #[error("concept is not part of this lattice")]
    ConceptNotFound,

    #[error(
        "concept count exceeds the limit of {limit}; use a smaller semantic field or raise --max-concepts"
    )]
    TooManyConcepts { limit: usize },

    #[error("antecedent and consequent overlap on {0:?}")]
    OverlappingRule(String),

    #[error("rule has no attributes")]
    EmptyRule,

    #[error("undefined confidence: no object has every antecedent attribute")]
    UndefinedConfidence,

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
