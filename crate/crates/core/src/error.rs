use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("vertices {from} and {to} lie in different components")]
    Disconnected { from: usize, to: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{module}: budget of {limit} exceeded (reached {reached} at step {step})")]
    BudgetExceeded {
        module: &'static str,
        limit: usize,
        reached: usize,
        step: usize,
    },

    #[error("set does not generate {group}: {reason}")]
    NonGenerating { group: String, reason: String },

    #[error("factor {index} failed certification: {reason}")]
    Certification { index: usize, reason: String },

    #[error("profile depth {have} is insufficient, need {need}")]
    InsufficientDepth { have: usize, need: usize },

    #[error("no containment found for m <= {m_max}")]
    ContainmentNotFound { m_max: usize },

    #[error("recursion chain violated at n = {n}, index {index}")]
    ChainViolation { n: usize, index: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
