use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmstError {
    #[error("model index {0} is out of range")]
    ModelOutOfRange(u32),
    #[error("set {0} is not representable on this carrier")]
    NotRepresentable(String),
    #[error("sentence {0} is not in the carrier")]
    SentenceOutOfRange(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid amst: {0}")]
    Invalid(String),
    #[error("closure is not finite or cofinite: {0}")]
    NonRepresentableClosure(String),
    #[error("carrier too large for exhaustive evaluation: {0}")]
    TooLarge(String),
}
