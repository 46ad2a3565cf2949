use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid deck: {0}")]
    InvalidDeck(String),
    #[error("invalid dealing method: {0}")]
    InvalidMethod(String),
    /// Inputs that are individually valid but do not fit together.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    /// The brute-force oracle refuses decks above its size cap.
    #[error("oracle scale exceeded: deck size {n} is above the cap of {cap}")]
    ScaleExceeded { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
