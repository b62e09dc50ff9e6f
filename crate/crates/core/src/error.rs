use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A hook congruent to `s+d` modulo `2(s+d)` has no abacus position.
    #[error("hook {hook} has no position on the ({modulus},{d})-abacus")]
    UnplaceableHook { hook: u64, modulus: u64, d: u64 },

    /// Beads in a column are not a contiguous run on one side of the boundary.
    #[error("bead structure violated in column {column}: {reason}")]
    Structure { column: usize, reason: String },

    #[error("not a core: {0}")]
    NotACore(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// Reconstruction produced something the forward direction rejects.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
