use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid rule set: {0}")]
    InvalidRuleSet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("graph is not strongly connected: no path from {from:?} to {to:?}")]
    Disconnected { from: Vec<u8>, to: Vec<u8> },

    #[error("{0}")]
    NotASequence(String),

    #[error("rule {label} is not a two-block rotation")]
    NotTwoBlock { label: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap_check(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::ResourceCap { what, needed, cap })
    } else {
        Ok(())
    }
}
