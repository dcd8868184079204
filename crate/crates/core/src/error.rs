use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("grids differ")]
    GridMismatch,
    #[error("grid depth limit exceeded: {0}")]
    DepthLimit(String),
    #[error("refinement exhausted: {cubes} cubes exceeds budget {budget}")]
    RefinementExhausted { cubes: usize, budget: usize },
    #[error("refinement needed at slice {slice}: {reason}")]
    RefineNeeded { slice: usize, reason: String },
    #[error("ambiguous containment: {0}")]
    Ambiguous(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("window margin too small: need {need} symbols, have {have}")]
    Margin { need: usize, have: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
