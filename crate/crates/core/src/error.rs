use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("strand count mismatch: {0}")]
    StrandCount(String),
    #[error("slice index out of range: {0}")]
    Index(String),
    #[error("inconsistent orientation: {0}")]
    Orientation(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    #[error("algebra block is not free with unit pivots: {0}")]
    Torsion(String),
    #[error("not a chain complex: {0}")]
    NotComplex(String),
    #[error("incompatible inputs: {0}")]
    Mismatch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input errors are the ones a user fixes by editing a diagram file.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::StrandCount(_) | Error::Index(_) | Error::Orientation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
