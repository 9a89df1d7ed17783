use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the operation's domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input graph is not a tree.
    #[error("not a tree: {0}")]
    NotATree(String),

    /// The input graph is not a rooted forest (one root per component).
    #[error("not a rooted forest: {0}")]
    NotARootedForest(String),

    /// A code sequence fails its structural validity checks.
    #[error("malformed code: {0}")]
    MalformedCode(String),

    /// An exhaustion or exact-search cap was exceeded; the caller must
    /// choose a smaller instance rather than receive a silent heuristic.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// A root finder's bracket did not change sign. This signals a bug,
    /// never valid input.
    #[error("bracketing failed: {0}")]
    Bracketing(String),

    /// Two algebraically equal routes disagreed. This signals a bug.
    #[error("identity mismatch: {0}")]
    IdentityMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
