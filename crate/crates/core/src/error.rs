use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported parameters (n={n}, k={k}, r={r}): {reason}")]
    UnsupportedParameters {
        n: usize,
        k: usize,
        r: usize,
        reason: String,
    },

    #[error("no r-stable family for n={n}, k={k}, r={r}: r must lie in [1, floor(n/k)]")]
    EmptyFamily { n: usize, k: usize, r: usize },

    #[error("degenerate polytope: {0}")]
    Degenerate(String),

    #[error("polytope is not bounded by constraint propagation")]
    Unbounded,

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("integer overflow in exact kernel")]
    Overflow,

    #[error("verdict mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn unsupported(n: usize, k: usize, r: usize, reason: impl Into<String>) -> Self {
        Error::UnsupportedParameters {
            n,
            k,
            r,
            reason: reason.into(),
        }
    }
}
