use core::fmt;

/// Errors reported by the core library. Most of them signal a caller bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ArityMismatch { expected: usize, found: usize },
    InvalidInput(&'static str),
    InvalidDepth(usize),
    NotFinite,
    NotBinary(usize),
    EmptyFamily,
    /// An explicit product or cover instance grew past its size limit.
    TooLarge { size: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidDepth(m) => write!(f, "depth must be at least 1, got {m}"),
            Error::NotFinite => write!(f, "operation requires a finite point-set relation"),
            Error::NotBinary(a) => write!(f, "operation requires arity 2, got {a}"),
            Error::EmptyFamily => write!(f, "no count series supplied"),
            Error::TooLarge { size, limit } => {
                write!(f, "instance too large: {size} exceeds limit {limit}")
            }
        }
    }
}

#[cfg(feature = "std")]
extern crate std;

#[cfg(feature = "std")]
impl std::error::Error for Error {}
