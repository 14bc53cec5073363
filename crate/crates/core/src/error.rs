use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (foreign symbol, bad reference, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A construction would exceed a configured size cap.
    #[error("size limit exceeded: {what} (cap {cap})")]
    SizeLimit { what: String, cap: u64 },

    /// A bounded search ran out of its step budget.
    #[error("step budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn size_limit(what: impl Into<String>, cap: u64) -> Self {
        Error::SizeLimit { what: what.into(), cap }
    }
}
