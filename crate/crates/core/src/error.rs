use thiserror::Error;

/// Errors shared across the crate.
///
/// Budget violations are distinguished from input errors so that callers
/// (in particular the CLI) can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} candidates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("not a permutation of 0..{m}: {reason}")]
    InvalidPermutation { m: usize, reason: String },

    #[error("center set is empty")]
    EmptyCenters,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed tree: {0}")]
    InvalidTree(String),

    #[error("degenerate embedding: {0}; resample the embedding and retry")]
    DegenerateEmbedding(String),

    #[error("missing context: culture `{culture}` requires {needed}")]
    MissingContext {
        culture: &'static str,
        needed: &'static str,
    },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("budget `{budget}` exceeded: limit {limit}, required {required}")]
    BudgetExceeded {
        budget: &'static str,
        limit: u64,
        required: u64,
    },
}

impl Error {
    /// True for resource-budget violations (as opposed to malformed input).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
