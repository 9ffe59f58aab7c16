use thiserror::Error;

/// Every failure the library reports.
///
/// Mathematical verdicts (a zero coefficient, a failed constraint) are never
/// errors; these variants describe malformed input, violated preconditions
/// or exhausted computation budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: String },

    #[error("empty partition not allowed here: {0}")]
    EmptyPartition(&'static str),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded in {what}: requested {requested}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: String, len: String },

    #[error("invalid {kind} instance: {reason}")]
    InvalidInstance { kind: &'static str, reason: String },

    #[error("stage {stage} failed: {reason}")]
    StageFailed { stage: &'static str, reason: String },

    #[error("epsilon must satisfy 0 < epsilon <= 1, got {0}")]
    EpsilonOutOfRange(String),

    #[error("non-monotone column vector: {0}")]
    NonMonotone(String),

    #[error("malformed design: {0}")]
    MalformedDesign(String),

    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors a caller may recover from by choosing a cheaper route.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
