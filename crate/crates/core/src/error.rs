use thiserror::Error;

/// Errors produced by the library. Arithmetic overflow is not an error
/// variant: coefficient overflow aborts with a diagnostic, since a wrapped
/// coefficient would silently corrupt an exactness proof.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cyclic order {0}: every factor must be at least 2")]
    InvalidOrder(u64),

    #[error("invalid conductor {0}: must be at least 1")]
    InvalidConductor(i64),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("empty set not allowed for {0}")]
    EmptySet(&'static str),

    #[error("duplicate element at rank {0}")]
    DuplicateElement(u64),

    #[error("group order {order} exceeds the configured bound {bound}")]
    SizeLimit { order: u64, bound: u64 },

    #[error("subset sizes {size_s} x {size_t} do not multiply to the group order {order}")]
    SizeProductMismatch {
        size_s: u64,
        size_t: u64,
        order: u64,
    },

    #[error("S0 and S1 overlap: not a partition")]
    NotAPartition,

    #[error("neither factor satisfies the squared-character reality condition")]
    ConditionViolated,

    #[error("character values do not invert to an integer group ring element (first bad rank {0})")]
    NotAGroupRingElement(u64),

    #[error("squared character value at rank {0} is not a rational integer")]
    IrrationalSpectrum(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
