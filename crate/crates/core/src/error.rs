use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no idempotent for zero")]
    NoIdempotent,

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("complex is not reduced: arrow {from} -> {to} preserves both filtrations")]
    NotReduced { from: String, to: String },

    #[error("not a knot complex: {0}")]
    NotKnotComplex(String),

    #[error("complex is not simultaneously vertically and horizontally simplified; use the base-free algorithm")]
    NotSimplified,

    #[error("horizontal homology sits at Alexander level {horizontal}, not {expected}; use the base-free algorithm")]
    Asymmetric { horizontal: i64, expected: i64 },

    #[error("framing parameter {n} too small; need at least {min}")]
    FramingTooSmall { n: i64, min: i64 },

    #[error("invalid type D module: {0}")]
    InvalidModule(String),

    #[error("invalid type DA bimodule: {0}")]
    InvalidBimodule(String),

    #[error("cannot cancel {from} -> {to}: {reason}")]
    NotCancellable {
        from: String,
        to: String,
        reason: String,
    },

    #[error("idempotent mismatch: {0}")]
    IdempotentMismatch(String),

    #[error("action arity {arity} exceeds bound {bound}")]
    ArityExceeded { arity: usize, bound: usize },

    #[error("generator `{0}` carries no column tag")]
    MissingTag(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
