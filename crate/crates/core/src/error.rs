use thiserror::Error;

/// Errors raised by the library. Every variant is a caller mistake or a
/// resource guard; none of the arithmetic can overflow.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("valuation base must be at least 2, got {0}")]
    InvalidBase(i64),
    #[error("expected a positive rational, got {0}")]
    NotPositive(String),
    #[error("{what} must be at least {min}, got {got}")]
    OutOfRange {
        what: &'static str,
        min: i64,
        got: i64,
    },
    #[error("mediant of two infinite boundaries is undefined")]
    BothBoundaries,
    #[error("mediant parity rule needs two distinct parities, got {0} twice")]
    EqualParities(char),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(String),
    #[error("checkpoint {checkpoint} outside 1..={count}")]
    BadCheckpoint { checkpoint: u64, count: u64 },
    #[error("unknown ordering '{0}'")]
    UnknownOrdering(String),
    #[error("request for {requested} elements exceeds cap of {cap}")]
    CapExceeded { requested: u128, cap: u64 },
    #[error("cannot parse rational literal '{0}'")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
