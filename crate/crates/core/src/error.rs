use thiserror::Error;

use crate::games::Player;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a preorder: {0}")]
    NotAPreorder(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("empty open set where a nonempty one is required")]
    EmptyOpenSet,
    /// A horizon-bounded predicate could not be decided within its search bound.
    #[error("indeterminate: {what} (search bound {bound})")]
    Indeterminate { what: String, bound: usize },
    /// A promised witness was not found; the promise behind the search is broken.
    #[error("search bound {bound} exhausted: {what}")]
    SearchExhausted { what: String, bound: usize },
    #[error("illegal move by player {player} at inning {inning}: {reason}")]
    IllegalMove {
        player: Player,
        inning: usize,
        reason: String,
    },
    #[error("strategy failure: {0}")]
    StrategyFailure(String),
    #[error("claim violated: the non-response family covers the space ({0})")]
    ClaimViolation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("enumeration of {count} items exceeds the cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::Indeterminate { .. })
    }
}
