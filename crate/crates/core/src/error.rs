use thiserror::Error;

/// Errors raised by field construction and the analyses built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree m={0} is outside the supported range 2..=31")]
    UnsupportedDegree(u32),

    #[error("reduction polynomial {poly:#x} does not have degree {m}")]
    WrongDegree { m: u32, poly: u64 },

    #[error("reduction polynomial {poly:#x} is reducible: divisible by {factor:#x}")]
    Reducible { poly: u64, factor: u64 },

    #[error("reduction polynomial {0:#x} has zero constant term (divisible by X)")]
    ZeroConstantTerm(u64),

    #[error("value {bits:#x} is not an element of GF(2^{m})")]
    NotAnElement { m: u32, bits: u64 },

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("{0} requires odd m (cube roots are not unique for m={1})")]
    EvenDegree(&'static str, u32),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("corrupted spectrum: {0}")]
    CorruptedSpectrum(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a broken mathematical invariant (as opposed
    /// to bad input).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::InvariantViolation(_) | Error::CorruptedSpectrum(_)
        )
    }
}
