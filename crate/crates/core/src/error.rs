use thiserror::Error;

/// Errors raised by the numerics in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision: {digits} digits requested, at least {min} required")]
    InvalidPrecision { digits: u32, min: u32 },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("unknown product kind `{0}`")]
    UnknownKind(String),

    /// Cancellation compensation needs more working digits than the context allows.
    #[error(
        "precision exhausted: {required_extra} extra working digits needed, only {available} available \
         (raise the requested precision by at least {shortfall} digits)"
    )]
    PrecisionExhausted {
        required_extra: u32,
        available: u32,
        shortfall: u32,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite result in {0}")]
    NonFinite(&'static str),

    /// An adaptive procedure hit its refinement limit before meeting the tolerance.
    #[error("not converged: {0}")]
    NotConverged(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
