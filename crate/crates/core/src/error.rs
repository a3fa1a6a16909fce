use thiserror::Error;

/// Errors raised anywhere in the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constraint variables must be pairwise distinct, got ({0}, {1}, {2})")]
    DuplicateVariable(u32, u32, u32),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("variable {var} outside [1, {n}]")]
    Range { var: u32, n: usize },

    #[error("constraint {0} appears more than once")]
    DuplicateConstraint(String),

    #[error("header declares {declared} constraints but {read} were read")]
    CountMismatch { declared: usize, read: usize },

    #[error("need at least {min} variables, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("requested {requested} distinct constraints but only {available} exist")]
    TooMany { requested: u128, available: u128 },

    #[error("parameter must be non-negative, got {0}")]
    NegativeParameter(i64),

    #[error("{what}: size {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("instance contains a complete triple")]
    NotIrreducible,

    #[error("not a bijection onto 1..={0}")]
    NotBijection(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
