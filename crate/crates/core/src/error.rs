use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicands(u64, u64),
    #[error("radicand {0} is outside the supported range")]
    RadicandOutOfRange(String),
    #[error("expected an irrational number, got {0}")]
    RationalInput(String),
    #[error("cannot parse number literal {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {0} lies outside the window")]
    OutsideWindow(String),
    #[error("{what} exceeded its cap of {cap} iterations")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("sign undecided at {0} bits of precision")]
    Undecidable(u32),
    #[error("{0} is not a factor of the language")]
    NotAFactor(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("incompatible seed: {0}")]
    IncompatibleSeed(String),
    #[error("lattice coordinate overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
