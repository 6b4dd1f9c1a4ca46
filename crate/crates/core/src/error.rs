use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Hessenberg function: {0}")]
    InvalidHess(String),

    #[error("invalid simple-root set: {0}")]
    InvalidRootSet(String),

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("size mismatch: expected n = {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("{0} is not an independent set of the incomparability graph")]
    NotIndependent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The A matrix failed its triangularity audit. Always an implementation defect.
    #[error("A matrix for n = {n} is not unit upper-triangular at ({lambda}, {mu}): entry {value}")]
    Triangularity {
        n: usize,
        lambda: String,
        mu: String,
        value: u64,
    },

    /// A solved graded system does not reproduce its right-hand side.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by malformed user input rather than by an internal defect.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidPerm(_)
                | Error::InvalidPartition(_)
                | Error::InvalidHess(_)
                | Error::InvalidRootSet(_)
                | Error::SizeMismatch { .. }
                | Error::OutOfRange(_)
                | Error::NotIndependent(_)
                | Error::Precondition(_)
        )
    }
}
