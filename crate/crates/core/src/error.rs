use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched rings, lengths or malformed objects.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A caller-side precondition does not hold (e.g. a non-saturated ideal).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The computation ran out of its step or time budget. `partial` describes
    /// how far it got; partial results are never returned as answers.
    #[error("budget exceeded in {stage}: {partial}")]
    Budget { stage: String, partial: String },

    #[error("unknown corpus entry: {0}")]
    UnknownCorpus(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
