//! The bicyclic monoid and Leech's monoid in pair normal form.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::ArithElement;
use crate::error::{Error, Result};
use crate::numtheory::{pow, CongruenceClass, Natural};
use crate::oracle::FinitePartialInjection;

/// Truncated subtraction.
pub fn monus(y: &Natural, x: &Natural) -> Natural {
    if x <= y {
        y - x
    } else {
        Natural::zero()
    }
}

/// `[b,a]`, the map `n ↦ n − a + b` defined for `n ≥ a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicyclicElement {
    pub b: Natural,
    pub a: Natural,
}

impl BicyclicElement {
    pub fn new(b: impl Into<Natural>, a: impl Into<Natural>) -> Self {
        BicyclicElement {
            b: b.into(),
            a: a.into(),
        }
    }

    pub fn identity() -> Self {
        BicyclicElement::new(0u32, 0u32)
    }

    /// `(d,c)(b,a) = (d + (b∸c), (c∸b) + a)`.
    pub fn compose(&self, rhs: &BicyclicElement) -> Self {
        let (d, c) = (&self.b, &self.a);
        let (b, a) = (&rhs.b, &rhs.a);
        BicyclicElement {
            b: d + monus(b, c),
            a: monus(c, b) + a,
        }
    }

    pub fn dagger(&self) -> Self {
        BicyclicElement {
            b: self.a.clone(),
            a: self.b.clone(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.a == self.b
    }

    /// The graph of the map restricted to `{0,…,window}` on both sides.
    pub fn to_window(&self, window: u64) -> FinitePartialInjection {
        let start = self.a.to_u64().unwrap_or(u64::MAX);
        let bound = Natural::from(window);
        let pairs = (start..=window)
            .map(|n| (n, Natural::from(n) - &self.a + &self.b))
            .filter(|(_, v)| *v <= bound);
        FinitePartialInjection::from_pairs(window, pairs).expect("translations are injective")
    }

    /// `[b,a] ↦ (p^b, p^a)`.
    pub fn exp_embed(&self, p: impl Into<Natural>) -> Result<LeechElement> {
        let p = p.into();
        if p < Natural::from(2u32) {
            return Err(Error::TooSmall {
                what: "base",
                min: 2,
                value: p,
            });
        }
        let exponent = |v: &Natural| {
            v.to_u64().ok_or_else(|| {
                Error::Malformed(format!("exponent {v} is too large to materialise"))
            })
        };
        LeechElement::new(pow(&p, exponent(&self.b)?), pow(&p, exponent(&self.a)?))
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]+", self.b, self.a)
    }
}

/// `[m,n]`, the map `nℕ → mℕ`, `nk ↦ mk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeechElement {
    m: Natural,
    n: Natural,
}

impl LeechElement {
    pub fn new(m: impl Into<Natural>, n: impl Into<Natural>) -> Result<Self> {
        let (m, n) = (m.into(), n.into());
        for v in [&m, &n] {
            if v.is_zero() {
                return Err(Error::TooSmall {
                    what: "Leech component",
                    min: 1,
                    value: v.clone(),
                });
            }
        }
        Ok(LeechElement { m, n })
    }

    pub fn identity() -> Self {
        LeechElement {
            m: 1u32.into(),
            n: 1u32.into(),
        }
    }

    pub fn m(&self) -> &Natural {
        &self.m
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    /// `(m,n)(p,q) = (mp/gcd(n,p), nq/gcd(n,p))`.
    pub fn compose(&self, rhs: &LeechElement) -> Self {
        let g = self.n.gcd(&rhs.m);
        LeechElement {
            m: &self.m * &rhs.m / &g,
            n: &self.n * &rhs.n / &g,
        }
    }

    /// The same product computed as `(m·lcm(n,p)/n, q·lcm(n,p)/p)`.
    pub fn compose_lcm(&self, rhs: &LeechElement) -> Self {
        let l = self.n.lcm(&rhs.m);
        LeechElement {
            m: &self.m * &l / &self.n,
            n: &rhs.n * &l / &rhs.m,
        }
    }

    pub fn dagger(&self) -> Self {
        LeechElement {
            m: self.n.clone(),
            n: self.m.clone(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.m == self.n
    }

    /// `[m,n] ↦ R‡(m,0)∘R(n,0)`.
    pub fn embed(&self) -> ArithElement {
        ArithElement::between(
            CongruenceClass::new(self.n.clone(), 0u32).expect("positive"),
            CongruenceClass::new(self.m.clone(), 0u32).expect("positive"),
        )
    }
}

impl fmt::Display for LeechElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]*", self.m, self.n)
    }
}
