use std::fmt;

use thiserror::Error;

use crate::oag::Construction;

/// Syntax error in an element, formula or series literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("construction mismatch: {left} vs {right}")]
    ConstructionMismatch {
        left: Construction,
        right: Construction,
    },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("element is not in the image of {0}")]
    NotInImage(String),
    #[error("no non-divisible entry: lead descriptor modulo {0} is absent")]
    LeadAbsent(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} is experimental; enable it explicitly")]
    Experimental(String),
    #[error("the zero series has no valuation or inverse")]
    ZeroSeries,
    #[error("coefficient kinds differ: {0}")]
    CoefficientMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unsupported formula: {0}")]
    Unsupported(String),
    #[error("precision {0} cannot be reached by a geometric expansion")]
    PrecisionUnreachable(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
