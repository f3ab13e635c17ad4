use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PcpError {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("dimension mismatch: {0}")]
    DimensionError(String),
    #[error("zero matrix: {0}")]
    ZeroMatrix(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ridge score overestimate violated at column {index}: {given} < {required}")]
    InvalidOverestimate {
        index: usize,
        given: f64,
        required: f64,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for PcpError {
    fn from(e: std::io::Error) -> Self {
        PcpError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, PcpError>;
