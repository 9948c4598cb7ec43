//! Error types shared by the library and the command line front end.

use thiserror::Error;

/// A syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    /// Byte offset of the offending character.
    pub offset: usize,
    /// What went wrong.
    pub message: String,
}

impl ParseError {
    /// Creates a syntax error at `offset`.
    pub fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// Domain errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A module parameter is larger than the truncation degree.
    #[error("parameter {value} exceeds truncation degree {degree}")]
    ExceedsDegree {
        /// The offending parameter.
        value: usize,
        /// The truncation degree.
        degree: usize,
    },
    /// Two modules with different truncation degrees were combined.
    #[error("truncation degrees differ: {0} and {1}")]
    DegreeMismatch(usize, usize),
    /// An operation that needs a positive truncation degree got zero.
    #[error("operation needs a truncation degree of at least {0}")]
    DegreeTooSmall(usize),
    /// A degree argument lies outside the allowed range.
    #[error("degree {value} is outside the allowed range {lo}..{hi}")]
    DegreeOutOfRange {
        /// The offending degree.
        value: usize,
        /// Smallest allowed value.
        lo: usize,
        /// One past the largest allowed value.
        hi: usize,
    },
    /// Tuples of different lengths were mixed.
    #[error("tuples of different lengths: {0} and {1}")]
    MixedLengths(usize, usize),
    /// An operation that needs a nonzero input got zero.
    #[error("input is zero")]
    ZeroInput,
    /// A tuple is not strictly increasing with positive entries.
    #[error("invalid tuple {0:?}: entries must be positive and strictly increasing")]
    InvalidTuple(Vec<u64>),
    /// A rational factor has an unsupported shape.
    #[error("invalid rational factor: {0}")]
    InvalidFactor(String),
    /// A malformed module description.
    #[error("invalid module: {0}")]
    InvalidModule(String),
}

/// Result alias for library operations.
pub type Result<T> = std::result::Result<T, Error>;
