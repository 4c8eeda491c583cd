use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("grid of {got} points per axis is below the resolution floor of {min}")]
    Resolution { got: usize, min: usize },

    #[error("state {state} couples to states outside the table")]
    IncompleteBasis { state: String },

    #[error("amplitude symbol {0} has no bound value")]
    MissingBinding(String),

    #[error("phases are not chain-rule consistent: {0}")]
    Coherence(String),

    #[error("inconsistent phase constraint: {0}")]
    Contradiction(String),

    #[error("the two angle-ordering branches disagree: {0}")]
    BranchMismatch(String),

    #[error("{n} particles exceeds the limit of {max}")]
    SizeGuard { n: usize, max: usize },
}
