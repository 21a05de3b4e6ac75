use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: duplicate sense `{sense}` for word `{word}`")]
    DuplicateSense {
        line: usize,
        word: String,
        sense: String,
    },

    #[error("line {line}: sense `{sense}` of `{word}` has no translation words")]
    EmptyTranslations {
        line: usize,
        word: String,
        sense: String,
    },

    #[error("taxonomy edge `{0}` -> `{0}` is a self-loop")]
    SelfEdge(String),

    #[error("taxonomy contains a cycle through `{0}`")]
    Cycle(String),

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("sense `{sense}` is not in the sense space of `{word}`")]
    SenseNotInSpace { word: String, sense: String },

    #[error("instance tag `{sense}` is not a base sense of `{word}`")]
    TagNotInInventory { word: String, sense: String },

    #[error("contingency table has zero total")]
    EmptyTable,

    #[error("{0}")]
    Metric(&'static str),

    #[error("unsupported model version `{0}`")]
    ModelVersion(String),

    #[error("corrupt model file: {0}")]
    CorruptModel(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        Error::Malformed {
            line,
            message: message.into(),
        }
    }
}

pub(crate) fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
