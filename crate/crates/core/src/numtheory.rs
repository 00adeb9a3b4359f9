//! Natural-number arithmetic underlying every other module: gcd, lcm, the
//! extended Euclidean algorithm and intersection of congruence classes.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An unbounded non-negative integer.
pub type Natural = BigUint;

/// A non-negative rational, always kept in lowest terms.
pub type Rational = Ratio<BigUint>;

pub fn gcd(m: &Natural, n: &Natural) -> Result<Natural> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(m.gcd(n))
}

pub fn lcm(m: &Natural, n: &Natural) -> Result<Natural> {
    for v in [m, n] {
        if v.is_zero() {
            return Err(Error::TooSmall {
                what: "lcm argument",
                min: 1,
                value: v.clone(),
            });
        }
    }
    let g = m.gcd(n);
    Ok(m / &g * n)
}

/// Returns `(g, x, y)` with `g = gcd(m, n)` and `x*m + y*n = g`.
///
/// When `m` divides `n` the cofactors are `(1, 0)`.
pub fn extended_gcd(m: &Natural, n: &Natural) -> Result<(Natural, BigInt, BigInt)> {
    if m.is_zero() && n.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    if !m.is_zero() && (n % m).is_zero() {
        return Ok((m.clone(), BigInt::one(), BigInt::zero()));
    }
    let (mut old_r, mut r) = (BigInt::from(m.clone()), BigInt::from(n.clone()));
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    let g = old_r
        .to_biguint()
        .expect("remainders of non-negative inputs stay non-negative");
    Ok((g, old_s, old_t))
}

/// Trial-division primality test.
pub fn is_prime(n: &Natural) -> bool {
    let two = Natural::from(2u32);
    if *n < two {
        return false;
    }
    let mut d = two;
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1u32;
    }
    true
}

/// The congruence class `modulus·ℕ + residue`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceClass {
    modulus: Natural,
    residue: Natural,
}

impl CongruenceClass {
    pub fn new(modulus: impl Into<Natural>, residue: impl Into<Natural>) -> Result<Self> {
        let (modulus, residue) = (modulus.into(), residue.into());
        if modulus.is_zero() {
            return Err(Error::TooSmall {
                what: "modulus",
                min: 1,
                value: modulus,
            });
        }
        if residue >= modulus {
            return Err(Error::ResidueOutOfRange { modulus, residue });
        }
        Ok(CongruenceClass { modulus, residue })
    }

    /// All of ℕ, i.e. `1ℕ + 0`.
    pub fn full() -> Self {
        CongruenceClass {
            modulus: Natural::one(),
            residue: Natural::zero(),
        }
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    pub fn is_full(&self) -> bool {
        self.modulus.is_one()
    }

    pub fn member(&self, n: &Natural) -> bool {
        n % &self.modulus == self.residue
    }

    /// Chinese-remainder intersection. The result, when non-empty, has
    /// modulus exactly `lcm` of the two moduli and its least non-negative
    /// residue.
    pub fn intersect(&self, other: &CongruenceClass) -> Option<CongruenceClass> {
        let (g, x, _) = extended_gcd(&self.modulus, &other.modulus)
            .expect("moduli are positive");
        let diff = BigInt::from(other.residue.clone()) - BigInt::from(self.residue.clone());
        let g_int = BigInt::from(g.clone());
        if !(&diff % &g_int).is_zero() {
            return None;
        }
        let step = BigInt::from(&other.modulus / &g);
        let modulus = &self.modulus / &g * &other.modulus;
        // t solves (modulus_1 / g)·t ≡ diff / g (mod modulus_2 / g)
        let t = (&diff / &g_int * x).mod_floor(&step);
        let witness = BigInt::from(self.residue.clone()) + BigInt::from(self.modulus.clone()) * t;
        let residue = witness.mod_floor(&BigInt::from(modulus.clone()));
        Some(CongruenceClass {
            modulus,
            residue: to_natural(residue),
        })
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residue.is_zero() {
            write!(f, "{}N", self.modulus)
        } else {
            write!(f, "{}N+{}", self.modulus, self.residue)
        }
    }
}

fn to_natural(v: BigInt) -> Natural {
    debug_assert!(!v.is_negative());
    let (sign, mag) = v.into_parts();
    debug_assert!(sign != Sign::Minus);
    mag
}

/// `base^exp` as a natural.
pub fn pow(base: &Natural, exp: u64) -> Natural {
    let mut acc = Natural::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}
