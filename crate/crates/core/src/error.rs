use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that does not describe a valid object (permutation, partition, ...).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// An operation was called outside its precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A configured work bound was exceeded before the computation finished.
    #[error("resource limit exceeded: {what} (reached {reached}, cap {cap})")]
    ResourceLimit {
        what: &'static str,
        reached: u64,
        cap: u64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A structural fact the algorithms rely on did not hold.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
