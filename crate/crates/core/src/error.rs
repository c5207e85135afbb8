use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime (or lies outside the supported range 2..65536)")]
    InvalidPrime(u32),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: u128,
    },

    #[error("nonconforming input: {0}")]
    NonConforming(String),

    #[error("invalid normal factor graph: {0}")]
    InvalidGraph(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero state is not the unique state sequence of the all-zero code sequence")]
    ZeroStateNotUnique,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded {
            what,
            size: size.to_string(),
            cap,
        })
    } else {
        Ok(())
    }
}
