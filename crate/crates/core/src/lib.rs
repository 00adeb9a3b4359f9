//! Exact arithmetic for the arithmetic inverse monoid: monotone partial
//! injections between congruence classes of ℕ, together with the bicyclic,
//! Leech and polycyclic monoids that embed in it and the p-adic norm
//! recovered from the prime-order polycyclic generators.
//!
//! All products follow juxtaposition order: `f.compose(&g)` applies `g`
//! first. All integers are unbounded.

pub mod arith;
pub mod classical;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod padic;
pub mod polycyclic;

pub use arith::ArithElement;
pub use classical::{BicyclicElement, LeechElement};
pub use error::{Error, Result};
pub use numtheory::{CongruenceClass, Natural, Rational};
pub use oracle::FinitePartialInjection;
pub use padic::{CantorPoint, DigitOrder};
pub use polycyclic::{KbnElement, PolyElement, Word};
