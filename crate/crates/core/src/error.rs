use crate::board::RuleSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("side length {n} is out of range for {game}")]
    SideOutOfRange { game: RuleSet, n: usize },
    #[error("index {index} lies outside the move universe of size {size}")]
    OutsideUniverse { index: usize, size: usize },
    #[error("{0} boards have no dual")]
    NoDual(RuleSet),
    #[error("boards disagree: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameters outside the family domain: {0}")]
    Domain(String),
    #[error("construction failed to verify: {0}")]
    ConstructionFailed(String),
    #[error("input is not a penult: {0}")]
    NotPenult(String),
    #[error("node budget of {budget} expansions exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("position is not an L-position")]
    NotLosing,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
