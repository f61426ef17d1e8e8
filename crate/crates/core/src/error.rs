//! Error type shared by every module of the crate.

use crate::arith::Natural;

/// Failure modes of the library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A prime was supplied where a composite is required.
    #[error("prime input: {0} is prime, a composite is required")]
    PrimeInput(Natural),
    /// A value that is not prime was supplied where a prime is required.
    #[error("not prime: {0} fails trial division, a prime is required")]
    NotPrime(Natural),
    /// A theorem hypothesis is not met; the message quotes the hypothesis.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    /// A size or work cap would be exceeded; the operation refuses to start.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// A query outside the range a precomputed structure covers.
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
