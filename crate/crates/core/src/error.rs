use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic between numbers living in Q(sqrt(d1)) and Q(sqrt(d2)) with d1 != d2.
    #[error("incompatible quadratic fields: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    /// Discriminants must be square-free and >= 2 (1 is reserved for rationals).
    #[error("invalid discriminant {0}: must be square-free and >= 2")]
    InvalidDiscriminant(u64),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("slope out of range: {0}")]
    SlopeOutOfRange(String),

    /// Operation requires an irrational slope.
    #[error("slope is rational; operation requires an irrational slope")]
    RationalSlope,

    /// A point fell exactly on a partition boundary, so interval membership
    /// is ambiguous under half-open conventions.
    #[error("point coincides with a partition boundary")]
    DegeneratePoint,

    #[error("words use different alphabets")]
    AlphabetMismatch,

    #[error("symbol {0:#04x} not in alphabet")]
    InvalidSymbol(u8),

    #[error("empty word")]
    EmptyWord,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
