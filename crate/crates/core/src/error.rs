use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown letter `{0}`")]
    UnknownLabel(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("element does not belong to this wreath product: {0}")]
    GroupMismatch(String),

    #[error("free group rank {0} is too small (need at least 2)")]
    RankTooSmall(usize),

    #[error("{what} needs {needed} but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    /// A constructive argument produced something that fails its own check.
    #[error("invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
