use hypertree_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("realization failed after {attempts} attempts: {reason}")]
    Realization { attempts: u32, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Precondition(_) => 3,
            Error::Limit(_) => 4,
            Error::Internal(_) | Error::Realization { .. } => 5,
            Error::Poly(e) => match e {
                PolyError::Parse { .. } | PolyError::UnknownVariable(_) => 2,
                PolyError::Budget { .. } => 4,
                _ => 5,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Precondition(_) => "precondition",
            Error::Limit(_) => "limit",
            Error::Internal(_) => "internal",
            Error::Realization { .. } => "realization",
            Error::Poly(_) => "polynomial",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
