use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("degree cap must be positive")]
    InvalidCap,

    #[error("operands do not share field, variables and cap")]
    Mismatch,

    #[error("non-minimal presentation: generator `{0}` has valuation < 2")]
    NonMinimalPresentation(String),

    #[error("cap too small or ideal not m-primary (cap {0})")]
    NotArtinian(usize),

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{file}:{line}: {msg}")]
    Input { file: String, line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
