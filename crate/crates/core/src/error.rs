use thiserror::Error;

/// Largest field order any enumerating routine will walk.
pub const ENUMERATION_CAP: u64 = 2_000_000;

/// Largest index set for the triple `(y, z, x)` sums.
pub const TRIPLE_SUM_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid parameters: non-prime characteristic, gcd violation, wrong parity, ...
    #[error("{0}")]
    Param(String),

    /// The requested enumeration would exceed a configured cap.
    #[error("enumeration size {size} exceeds cap {cap}")]
    Capacity { size: u64, cap: u64 },

    /// An identity that must hold by construction did not.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(size: u64, cap: u64) -> Result<()> {
    if size > cap {
        Err(Error::Capacity { size, cap })
    } else {
        Ok(())
    }
}
