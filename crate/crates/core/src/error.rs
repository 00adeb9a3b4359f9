use crate::numtheory::Natural;
use thiserror::Error;

/// Failures of the partial operations in this crate.
///
/// Every variant is a domain error: the arguments violate a precondition of
/// the operation. Undefinedness of a partial injection at a point is not an
/// error and is reported as `None` instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{what} must be at least {min}, got {value}")]
    TooSmall {
        what: &'static str,
        min: u64,
        value: Natural,
    },
    #[error("residue {residue} is not below modulus {modulus}")]
    ResidueOutOfRange { modulus: Natural, residue: Natural },
    #[error("{0} is not prime")]
    NotPrime(Natural),
    #[error("digit {digit} is not below alphabet size {k}")]
    DigitOutOfRange { digit: u32, k: u32 },
    #[error("alphabet size mismatch: {0} vs {1}")]
    AlphabetMismatch(u32, u32),
    #[error("({len}, {value}) violates value < {k}^{len}")]
    KbnBound { k: u32, len: u64, value: Natural },
    #[error("({small_len}, {small}) is not a {k}-residue of ({big_len}, {big})")]
    NotResidue {
        k: u32,
        big_len: u64,
        big: Natural,
        small_len: u64,
        small: Natural,
    },
    #[error("{0} is not in the image of the polycyclic embedding for k = {1}")]
    NotPolycyclicShape(String, u32),
    #[error("window mismatch: {0} vs {1}")]
    WindowMismatch(u64, u64),
    #[error("graph is not injective: {0} and {1} share an image")]
    NotInjective(u64, u64),
    #[error("margin {margin} must be below the window bound {window}")]
    MarginTooLarge { margin: u64, window: u64 },
    #[error("malformed element: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
