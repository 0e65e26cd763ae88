use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("type error at {path}: {message}")]
    Type { path: String, message: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("universe of {size} observations exceeds the subset-enumeration guard of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("bounds mismatch: {0}")]
    BoundsMismatch(String),
}
