use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("dimension {n} exceeds the enumeration limit {max}")]
    ResourceLimit { n: usize, max: usize },

    #[error("unsupported entropy order alpha = {0}")]
    UnsupportedOrder(f64),

    #[error("vectors cannot be compared: totals {left} and {right} differ")]
    InvalidComparison { left: f64, right: f64 },

    #[error("overlap block has singular value {0} > 1")]
    InvalidOverlap(f64),

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::ContractViolation(_) => "contract_violation",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::UnsupportedOrder(_) => "unsupported_order",
            Error::InvalidComparison { .. } => "invalid_comparison",
            Error::InvalidOverlap(_) => "invalid_overlap",
            Error::InvalidArguments(_) => "invalid_arguments",
            Error::Io(_) => "io",
            Error::Parse(_) => "parse",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
