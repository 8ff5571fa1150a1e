use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("word is not a member of the subspace")]
    NotAMember,
    #[error("invalid positions: {0}")]
    InvalidPositions(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("point is outside omega: {0}")]
    OutOfOmega(String),
    #[error("invalid kind: {0}")]
    InvalidKind(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid size {size} for {kind}")]
    InvalidSize { kind: String, size: usize },
    #[error("instance too large: {0}")]
    SizeLimit(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("inconsistent model: decoded coloring admits a witness ({0})")]
    InconsistentModel(String),
    #[error("input witness failed verification: {0}")]
    InvalidInputWitness(String),
    #[error("unsupported alphabet size {0}")]
    UnsupportedAlphabet(usize),
    #[error("no Gallai-Witt witness on the grid of side {0}")]
    NoWitnessAtN(usize),
    #[error("pipeline stage `{stage}` failed: {reason}")]
    PipelineStage { stage: &'static str, reason: String },
    #[error("invalid arity: E_{index} takes {expected} argument(s), got {got}")]
    InvalidArity {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("growth budget exceeded at step {step}")]
    BudgetExceeded { step: u64 },
    #[error("ordering unknown: {0}")]
    UnknownOrdering(String),
    #[error("rejected result: {0}")]
    RejectedResult(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
