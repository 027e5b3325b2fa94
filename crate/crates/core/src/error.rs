use thiserror::Error;

/// A text or JSON input that failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
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

    /// Converts a serde_json error into a byte-offset diagnostic against `src`.
    pub fn from_json(src: &str, err: &serde_json::Error) -> Self {
        let mut offset = 0;
        for (i, line) in src.split_inclusive('\n').enumerate() {
            if i + 1 == err.line() {
                offset += err.column().saturating_sub(1).min(line.len());
                break;
            }
            offset += line.len();
        }
        ParseError::new(offset, err.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point {point} is not realized; nearest realized coordinates are {below} and {above}")]
    Unrealized {
        point: String,
        below: String,
        above: String,
    },

    #[error("not an action of the lamplighter group: {0}")]
    NotAnAction(String),

    #[error("invalid piecewise-linear map: {0}")]
    InvalidPl(String),

    #[error("no stabilization up to n = {cap}")]
    NotStabilizedBy { cap: u64 },

    #[error("certificate check failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
