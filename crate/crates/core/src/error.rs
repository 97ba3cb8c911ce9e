use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("malformed embedding: {0}")]
    MalformedEmbedding(String),
    #[error("inadmissible metric: {0}")]
    Inadmissible(String),
    #[error("unsupported dimension {dim} (at most {max})")]
    UnsupportedDimension { dim: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag for error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::RankMismatch { .. } => "rank-mismatch",
            Error::NotDominant(_) => "not-dominant",
            Error::MalformedEmbedding(_) => "malformed-embedding",
            Error::Inadmissible(_) => "inadmissible",
            Error::UnsupportedDimension { .. } => "unsupported-dimension",
            Error::Parse(_) => "parse",
        }
    }
}
