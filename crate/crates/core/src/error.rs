use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing required column `{column}`")]
    MissingColumn { column: String },

    #[error("input is not valid UTF-8 (first bad byte at offset {offset})")]
    Encoding { offset: usize },

    #[error("row {row}: invalid value {value:?} for `{column}`")]
    InvalidField {
        row: usize,
        column: String,
        value: String,
    },

    #[error("line {line}: {message}")]
    Json { line: usize, message: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum SentimentError {
    /// Bad backend configuration, e.g. an unknown backend id.
    #[error("configuration error: {0}")]
    Config(String),

    /// The adapter answered, but not in the agreed wire format.
    #[error("protocol error: {reason}")]
    Protocol { reason: String },

    /// The backend could not produce a result (timeout, dead process, I/O).
    #[error("backend failure: {0}")]
    Backend(String),

    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
}

impl SentimentError {
    pub(crate) fn protocol(reason: impl Into<String>) -> Self {
        SentimentError::Protocol {
            reason: reason.into(),
        }
    }

    /// True for everything a run should report as a backend failure.
    pub fn is_backend_failure(&self) -> bool {
        matches!(
            self,
            SentimentError::Protocol { .. } | SentimentError::Backend(_)
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoringError {
    #[error("empty_column")]
    EmptyColumn,

    #[error("empty_corpus")]
    EmptyCorpus,

    #[error("{0}")]
    InvalidWeights(String),

    #[error("raw score {value} for `{name}` is outside [-1, 1]")]
    RawOutOfRange { name: String, value: f64 },
}
