use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("walk is not even: {0}")]
    NotEven(String),

    /// A size guardrail refused the request; `estimate` describes the work it would take.
    #[error("refused: {what} (estimate: {estimate})")]
    Guardrail { what: String, estimate: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Guardrail { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 4,
            _ => 2,
        }
    }
}
