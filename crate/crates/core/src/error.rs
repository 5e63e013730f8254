use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid type {family}{rank}")]
    InvalidType { family: char, rank: usize },
    #[error("cannot parse type label {0:?}")]
    BadTypeLabel(String),
    #[error("vertex {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("fan is not complete, so the embedding is not projective")]
    NotProjective,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("classification gap: {0}")]
    ClassificationGap(String),
    #[error("{0} is not a special pair")]
    NotSpecial(String),
    #[error("unknown case label {0}")]
    UnknownCase(String),
    #[error("octonion has a nonzero real part")]
    NotImaginary,
}

pub type Result<T> = std::result::Result<T, Error>;
