use thiserror::Error;

/// Input errors raised by the locker algebra and its front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LockerError {
    #[error("universe size must be at least 1")]
    EmptyUniverse,

    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("state length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} outside 1..={universe}")]
    IndexOutOfRange { index: usize, universe: usize },

    #[error("expected a positive integer, got 0")]
    NotPositive,

    #[error("prefix length {p} outside the range n/2 < p <= {n}")]
    PrefixOutOfRange { p: usize, n: usize },

    #[error("invalid character {found:?} at position {position}")]
    InvalidStateChar { position: usize, found: char },

    #[error("state has length {found}, expected {expected}")]
    StateLength { expected: usize, found: usize },

    #[error("invalid student number {token:?}: students are numbered from 1")]
    InvalidMove { token: String },
}

pub type Result<T> = std::result::Result<T, LockerError>;
