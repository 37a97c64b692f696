use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("action {action:?} is not available to a {embodiment:?} agent")]
    IllegalAction {
        action: crate::blockworld::Action,
        embodiment: crate::blockworld::Embodiment,
    },

    #[error("exhaustive enumeration needs {required} sequences, budget is {budget}; use sparse sampling instead")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("invalid world: {0}")]
    InvalidWorld(String),

    #[error("invalid scenario config: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
