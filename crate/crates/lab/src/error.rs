use amst_core::AmstError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("{models} models over {sentences} sentences need {bits} bits, over the budget of {budget}")]
    OverBudget { models: u32, sentences: u32, bits: u64, budget: u64 },
    #[error("invalid enumeration space: {0}")]
    InvalidSpace(String),
    #[error("unknown example id {0}")]
    UnknownExample(String),
    #[error(transparent)]
    Amst(#[from] AmstError),
}
