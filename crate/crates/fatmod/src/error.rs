use thiserror::Error;

/// Errors reported by the library's fallible entry points.
///
/// Degenerate-but-defined situations (modulus 1, the `⊥` outcome of a hosted
/// program) are deliberately *not* errors; see [`crate::dyncore::Bottom`].
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An enumeration or factorization was requested at a size this crate
    /// refuses to attempt.
    #[error("infeasible request: {0}")]
    Infeasible(String),

    /// Two polynomials over different base fields were mixed.
    #[error("mismatched base fields: GF({0}) vs GF({1})")]
    MismatchedField(u64, u64),

    /// A declared degree or height bound does not actually bound the data.
    #[error("bound violation: {0}")]
    BoundViolation(String),

    /// A sparse-polynomial text file failed to parse.
    #[error("polynomial file, line {line}: {msg}")]
    PolyFile { line: usize, msg: String },

    /// Malformed hex seed string.
    #[error("invalid seed: {0}")]
    BadSeed(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
