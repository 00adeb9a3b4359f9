//! The arithmetic inverse monoid: monotone partial injections between
//! congruence classes of ℕ.
//!
//! Every non-zero element has a unique normal form `R‡(c,d)∘R(a,b)`, the
//! monotone bijection `aℕ+b → cℕ+d` given by `n ↦ c·(n−b)/a + d`. Products
//! are written in juxtaposition order: in `f.compose(&g)` the map `g` is
//! applied first.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, CongruenceClass, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArithElement {
    /// The nowhere-defined map.
    Zero,
    /// The monotone bijection `dom → img`.
    NormalForm {
        dom: CongruenceClass,
        img: CongruenceClass,
    },
}

impl ArithElement {
    pub fn identity() -> Self {
        ArithElement::NormalForm {
            dom: CongruenceClass::full(),
            img: CongruenceClass::full(),
        }
    }

    /// `R(a,b)`: defined on `aℕ+b`, sending `n` to `(n−b)/a`.
    pub fn generator(a: impl Into<Natural>, b: impl Into<Natural>) -> Result<Self> {
        Ok(ArithElement::NormalForm {
            dom: CongruenceClass::new(a, b)?,
            img: CongruenceClass::full(),
        })
    }

    /// `R‡(c,d)∘R(a,b)` from its four coefficients.
    pub fn normal_form(
        c: impl Into<Natural>,
        d: impl Into<Natural>,
        a: impl Into<Natural>,
        b: impl Into<Natural>,
    ) -> Result<Self> {
        Ok(ArithElement::NormalForm {
            dom: CongruenceClass::new(a, b)?,
            img: CongruenceClass::new(c, d)?,
        })
    }

    pub fn between(dom: CongruenceClass, img: CongruenceClass) -> Self {
        ArithElement::NormalForm { dom, img }
    }

    /// The partial identity on a class.
    pub fn partial_identity(class: CongruenceClass) -> Self {
        ArithElement::NormalForm {
            dom: class.clone(),
            img: class,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ArithElement::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ArithElement::NormalForm { dom, img } if dom.is_full() && img.is_full())
    }

    pub fn domain(&self) -> Option<&CongruenceClass> {
        match self {
            ArithElement::Zero => None,
            ArithElement::NormalForm { dom, .. } => Some(dom),
        }
    }

    pub fn image(&self) -> Option<&CongruenceClass> {
        match self {
            ArithElement::Zero => None,
            ArithElement::NormalForm { img, .. } => Some(img),
        }
    }

    pub fn dagger(&self) -> Self {
        match self {
            ArithElement::Zero => ArithElement::Zero,
            ArithElement::NormalForm { dom, img } => ArithElement::NormalForm {
                dom: img.clone(),
                img: dom.clone(),
            },
        }
    }

    pub fn apply(&self, n: &Natural) -> Option<Natural> {
        let ArithElement::NormalForm { dom, img } = self else {
            return None;
        };
        if !dom.member(n) {
            return None;
        }
        let steps = (n - dom.residue()) / dom.modulus();
        Some(img.modulus() * steps + img.residue())
    }

    /// The normal form of `self ∘ rhs`, with `rhs` applied first.
    pub fn compose(&self, rhs: &ArithElement) -> ArithElement {
        let (
            ArithElement::NormalForm {
                dom: outer_dom,
                img: outer_img,
            },
            ArithElement::NormalForm {
                dom: inner_dom,
                img: inner_img,
            },
        ) = (self, rhs)
        else {
            return ArithElement::Zero;
        };
        // Outer map is R‡(g,h)∘R(e,f), inner map is R‡(c,d)∘R(a,b).
        let (a, b) = (inner_dom.modulus(), inner_dom.residue());
        let (c, d) = (inner_img.modulus(), inner_img.residue());
        let (e, f) = (outer_dom.modulus(), outer_dom.residue());
        let (g, h) = (outer_img.modulus(), outer_img.residue());

        let Some(meet) = inner_img.intersect(outer_dom) else {
            return ArithElement::Zero;
        };
        let r = meet.residue();
        let gamma = gcd(c, e).expect("moduli are positive");

        let dom_mod = a * e / &gamma;
        let dom_res = a * ((r - d) / c) + b;
        let img_mod = g * c / &gamma;
        let img_res = g * ((r - f) / e) + h;
        ArithElement::NormalForm {
            dom: CongruenceClass::new(dom_mod, dom_res).expect("residue below modulus"),
            img: CongruenceClass::new(img_mod, img_res).expect("residue below modulus"),
        }
    }

    /// `dagger(e)∘e`, the partial identity on the domain.
    pub fn initial_idempotent(&self) -> Self {
        self.dagger().compose(self)
    }

    /// `e∘dagger(e)`, the partial identity on the image.
    pub fn final_idempotent(&self) -> Self {
        self.compose(&self.dagger())
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            ArithElement::Zero => true,
            ArithElement::NormalForm { dom, img } => dom == img,
        }
    }

    /// Canonical JSON form; all integers are decimal strings.
    pub fn to_json(&self) -> Value {
        match self {
            ArithElement::Zero => json!({ "zero": true }),
            ArithElement::NormalForm { dom, img } => json!({
                "dom": class_to_json(dom),
                "img": class_to_json(img),
            }),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        if value.get("zero").and_then(Value::as_bool) == Some(true) {
            return Ok(ArithElement::Zero);
        }
        let dom = class_from_json(value.get("dom"))?;
        let img = class_from_json(value.get("img"))?;
        Ok(ArithElement::NormalForm { dom, img })
    }
}

impl fmt::Display for ArithElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithElement::Zero => write!(f, "zero"),
            e if e.is_identity() => write!(f, "id"),
            ArithElement::NormalForm { dom, img } => write!(
                f,
                "R‡({},{})∘R({},{})",
                img.modulus(),
                img.residue(),
                dom.modulus(),
                dom.residue()
            ),
        }
    }
}

fn class_to_json(c: &CongruenceClass) -> Value {
    json!({ "mod": c.modulus().to_string(), "res": c.residue().to_string() })
}

fn class_from_json(v: Option<&Value>) -> Result<CongruenceClass> {
    let field = |name: &str| -> Result<Natural> {
        let text = v
            .and_then(|c| c.get(name))
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Malformed(format!("missing string field {name:?}")))?;
        text.parse::<Natural>()
            .map_err(|_| Error::Malformed(format!("{text:?} is not a decimal natural")))
    };
    CongruenceClass::new(field("mod")?, field("res")?)
}

/// `R(c,d)∘R(a,b) = R(ac, ad+b)`.
pub fn compose_generator_pair(
    c: impl Into<Natural>,
    d: impl Into<Natural>,
    a: impl Into<Natural>,
    b: impl Into<Natural>,
) -> Result<ArithElement> {
    let outer = CongruenceClass::new(c, d)?;
    let inner = CongruenceClass::new(a, b)?;
    let (a, b) = (inner.modulus(), inner.residue());
    ArithElement::generator(a * outer.modulus(), a * outer.residue() + b)
}

/// Closed form of the product `R(a_n,b_n)∘…∘R(a_0,b_0)`.
///
/// `pairs` lists the factors left to right, so the last pair is the
/// innermost factor `(a_0, b_0)`. The result is `R(A,B)` where `A` is the
/// product of the bases and `B` reads the `b_j` as mixed-radix digits with
/// `b_0` least significant. An empty chain is the identity.
pub fn compose_chain(pairs: &[(Natural, Natural)]) -> Result<ArithElement> {
    let mut modulus = Natural::one();
    let mut residue = Natural::zero();
    for (a, b) in pairs.iter().rev() {
        if a.is_zero() {
            return Err(Error::TooSmall {
                what: "modulus",
                min: 1,
                value: a.clone(),
            });
        }
        if b >= a {
            return Err(Error::ResidueOutOfRange {
                modulus: a.clone(),
                residue: b.clone(),
            });
        }
        residue += b * &modulus;
        modulus *= a;
    }
    ArithElement::generator(modulus, residue)
}

/// Prime factors of `n ≥ 1` by trial division, in nondecreasing order.
pub fn prime_factors(n: &Natural) -> Vec<Natural> {
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut p = Natural::from(2u32);
    while &p * &p <= rest {
        while rest.is_multiple_of(&p) {
            rest /= &p;
            factors.push(p.clone());
        }
        p += 1u32;
    }
    if rest > Natural::one() {
        factors.push(rest);
    }
    factors
}

/// Writes `R(a,b)` as a product of prime-modulus generators.
///
/// The primes appear in nondecreasing order from left to right and the
/// residues are the digits of `b` in the mixed-radix system whose columns
/// carry those primes, so `compose_chain` of the result is `R(a,b)`.
pub fn factor_into_prime_generators(
    a: impl Into<Natural>,
    b: impl Into<Natural>,
) -> Result<Vec<(Natural, Natural)>> {
    let (a, b) = (a.into(), b.into());
    if a < Natural::from(2u32) {
        return Err(Error::TooSmall {
            what: "modulus",
            min: 2,
            value: a,
        });
    }
    if b >= a {
        return Err(Error::ResidueOutOfRange {
            modulus: a,
            residue: b,
        });
    }
    let primes = prime_factors(&a);
    let mut digits = vec![Natural::zero(); primes.len()];
    let mut rest = b;
    // The rightmost factor is applied first and holds the least significant digit.
    for (slot, p) in digits.iter_mut().zip(primes.iter()).rev() {
        let (q, r) = rest.div_rem(p);
        *slot = r;
        rest = q;
    }
    debug_assert!(rest.is_zero());
    Ok(primes.into_iter().zip(digits).collect())
}
