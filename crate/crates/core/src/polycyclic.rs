//! Polycyclic monoids `P_k` in Nivat–Perot normal form, their embedding into
//! the arithmetic monoid, and the arithmetic encoding of words as
//! k-bounded naturals.
//!
//! A pair `(v, u)` stands for `v‡u`. Under the embedding the generator `x`
//! becomes `R(k,x)`, and `v‡u` becomes `R‡(k^|v|, num v)∘R(k^|u|, num u)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::ArithElement;
use crate::error::{Error, Result};
use crate::numtheory::{pow, CongruenceClass, Natural};

/// A finite word over `{0,…,k−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    k: u32,
    digits: Vec<u32>,
}

impl Word {
    pub fn new(k: u32, digits: Vec<u32>) -> Result<Self> {
        check_alphabet(k)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= k) {
            return Err(Error::DigitOutOfRange { digit, k });
        }
        Ok(Word { k, digits })
    }

    pub fn empty(k: u32) -> Result<Self> {
        Word::new(k, Vec::new())
    }

    /// Parses a digit string such as `"01"`; digits above 9 are written in
    /// brackets, e.g. `"3[11]0"`.
    pub fn parse(k: u32, text: &str) -> Result<Self> {
        let mut digits = Vec::new();
        let mut chars = text.chars();
        while let Some(ch) = chars.next() {
            let digit = match ch {
                '0'..='9' => ch.to_digit(10).expect("decimal digit"),
                '[' => {
                    let inner: String = chars.by_ref().take_while(|&c| c != ']').collect();
                    inner
                        .parse::<u32>()
                        .map_err(|_| Error::Malformed(format!("bad bracketed digit [{inner}]")))?
                }
                other => return Err(Error::Malformed(format!("unexpected {other:?} in word"))),
            };
            digits.push(digit);
        }
        Word::new(k, digits)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Base-`k` value, most significant digit first.
    pub fn num(&self) -> Natural {
        let k = Natural::from(self.k);
        self.digits
            .iter()
            .fold(Natural::zero(), |acc, &d| acc * &k + d)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_alphabet(self.k, other.k)?;
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(Word { k: self.k, digits })
    }

    /// `Some(r)` when `self = r·suffix`.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.digits
            .strip_suffix(suffix.digits.as_slice())
            .map(|r| Word {
                k: self.k,
                digits: r.to_vec(),
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            if d < 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        Ok(())
    }
}

fn check_alphabet(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::TooSmall {
            what: "alphabet size",
            min: 2,
            value: k.into(),
        });
    }
    Ok(())
}

fn same_alphabet(k: u32, other: u32) -> Result<()> {
    if k != other {
        return Err(Error::AlphabetMismatch(k, other));
    }
    Ok(())
}

/// An element of `P_k`: zero, or `up‡down`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PolyElement {
    Zero,
    Pair { up: Word, down: Word },
}

impl PolyElement {
    pub fn new(up: Word, down: Word) -> Result<Self> {
        same_alphabet(up.k, down.k)?;
        Ok(PolyElement::Pair { up, down })
    }

    pub fn identity(k: u32) -> Result<Self> {
        PolyElement::new(Word::empty(k)?, Word::empty(k)?)
    }

    /// The generator `x`, i.e. `ε‡x`.
    pub fn generator(k: u32, x: u32) -> Result<Self> {
        PolyElement::new(Word::empty(k)?, Word::new(k, vec![x])?)
    }

    pub fn k(&self) -> Option<u32> {
        match self {
            PolyElement::Zero => None,
            PolyElement::Pair { up, .. } => Some(up.k),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            PolyElement::Zero => true,
            PolyElement::Pair { up, down } => up == down,
        }
    }

    pub fn dagger(&self) -> Self {
        match self {
            PolyElement::Zero => PolyElement::Zero,
            PolyElement::Pair { up, down } => PolyElement::Pair {
                up: down.clone(),
                down: up.clone(),
            },
        }
    }

    /// Cancellation of matching substrings:
    /// `(x,w)(v,u)` is `(x, r·u)` if `w = r·v`, `(s·x, u)` if `v = s·w`,
    /// and zero otherwise.
    pub fn compose(&self, rhs: &PolyElement) -> Result<Self> {
        let (
            PolyElement::Pair { up: x, down: w },
            PolyElement::Pair { up: v, down: u },
        ) = (self, rhs)
        else {
            return Ok(PolyElement::Zero);
        };
        same_alphabet(x.k, v.k)?;
        if let Some(r) = w.strip_suffix(v) {
            return PolyElement::new(x.clone(), r.concat(u)?);
        }
        if let Some(s) = v.strip_suffix(w) {
            return PolyElement::new(s.concat(x)?, u.clone());
        }
        Ok(PolyElement::Zero)
    }

    /// The embedding into the arithmetic monoid.
    pub fn theta(&self) -> ArithElement {
        match self {
            PolyElement::Zero => ArithElement::Zero,
            PolyElement::Pair { up, down } => ArithElement::between(word_class(down), word_class(up)),
        }
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyElement::Zero => write!(f, "zero"),
            PolyElement::Pair { up, down } => write!(f, "P({}; \"{}\",\"{}\")", up.k, up, down),
        }
    }
}

/// `k^|w|ℕ + num(w)`.
fn word_class(w: &Word) -> CongruenceClass {
    CongruenceClass::new(pow(&Natural::from(w.k), w.len() as u64), w.num())
        .expect("num(w) < k^|w|")
}

/// The embedding `P_k → 𝒜`, checking that `e` lives in `P_k`.
pub fn theta(k: u32, e: &PolyElement) -> Result<ArithElement> {
    check_alphabet(k)?;
    if let Some(ek) = e.k() {
        same_alphabet(k, ek)?;
    }
    Ok(e.theta())
}

/// A k-bounded natural: the empty word, or `(len, value)` with
/// `value < k^len` encoding a word of positive length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KbnElement {
    Identity,
    Pair { len: u64, value: Natural },
}

impl KbnElement {
    /// Validates `value < k^len`. The pair `(0, 0)` is the identity.
    pub fn new(k: u32, len: u64, value: impl Into<Natural>) -> Result<Self> {
        check_alphabet(k)?;
        let value = value.into();
        if value >= pow(&Natural::from(k), len) {
            return Err(Error::KbnBound { k, len, value });
        }
        if len == 0 {
            return Ok(KbnElement::Identity);
        }
        Ok(KbnElement::Pair { len, value })
    }

    fn parts(&self) -> (u64, Natural) {
        match self {
            KbnElement::Identity => (0, Natural::zero()),
            KbnElement::Pair { len, value } => (*len, value.clone()),
        }
    }

    fn validate(&self, k: u32) -> Result<()> {
        let (len, value) = self.parts();
        KbnElement::new(k, len, value).map(|_| ())
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.parts().0
    }

    pub fn value(&self) -> Natural {
        self.parts().1
    }

    /// The congruence class `k^len·ℕ + value`.
    pub fn class(&self, k: u32) -> CongruenceClass {
        let (len, value) = self.parts();
        CongruenceClass::new(pow(&Natural::from(k), len), value).expect("value < k^len")
    }

    /// Inverse of [`mu`].
    pub fn to_word(&self, k: u32) -> Result<Word> {
        self.validate(k)?;
        let (len, mut value) = self.parts();
        let base = Natural::from(k);
        let mut digits = vec![0u32; len as usize];
        for slot in digits.iter_mut().rev() {
            let (q, r) = value.div_rem(&base);
            *slot = r.to_u32().expect("digit below k");
            value = q;
        }
        Word::new(k, digits)
    }
}

impl fmt::Display for KbnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbnElement::Identity => write!(f, "ε"),
            KbnElement::Pair { len, value } => write!(f, "({len},{value})"),
        }
    }
}

/// `(d,c)·(b,a) = (d+b, k^b·c + a)`, with the identity as unit.
pub fn kbn_compose(k: u32, lhs: &KbnElement, rhs: &KbnElement) -> Result<KbnElement> {
    lhs.validate(k)?;
    rhs.validate(k)?;
    let (d, c) = lhs.parts();
    let (b, a) = rhs.parts();
    let len = d
        .checked_add(b)
        .ok_or_else(|| Error::Malformed("word length overflow".into()))?;
    KbnElement::new(k, len, pow(&Natural::from(k), b) * c + a)
}

/// `w ↦ (|w|, num w)`.
pub fn mu(w: &Word) -> KbnElement {
    if w.is_empty() {
        KbnElement::Identity
    } else {
        KbnElement::Pair {
            len: w.len() as u64,
            value: w.num(),
        }
    }
}

/// Whether `small` is a k-residue of `big`: `small.len ≤ big.len` and
/// `big.value ≡ small.value (mod k^small.len)`. This is the arithmetic form
/// of "`small` encodes a suffix of `big`".
pub fn k_residue(k: u32, big: &KbnElement, small: &KbnElement) -> bool {
    let (b, a) = big.parts();
    let (y, x) = small.parts();
    y <= b && a % pow(&Natural::from(k), y) == x
}

/// `big \ small`: the element `r` with `r·small = big`.
pub fn kbn_cancel(k: u32, big: &KbnElement, small: &KbnElement) -> Result<KbnElement> {
    big.validate(k)?;
    small.validate(k)?;
    if !k_residue(k, big, small) {
        let (big_len, big_value) = big.parts();
        let (small_len, small_value) = small.parts();
        return Err(Error::NotResidue {
            k,
            big_len,
            big: big_value,
            small_len,
            small: small_value,
        });
    }
    let (b, a) = big.parts();
    let (y, x) = small.parts();
    if b == y {
        return Ok(KbnElement::Identity);
    }
    KbnElement::new(k, b - y, (a - x) / pow(&Natural::from(k), y))
}

/// Reads a class `k^len·ℕ + value` back as a k-bounded natural.
fn class_to_kbn(k: u32, class: &CongruenceClass, whole: &ArithElement) -> Result<KbnElement> {
    let base = Natural::from(k);
    let mut rest = class.modulus().clone();
    let mut len = 0u64;
    while !rest.is_one() {
        let (q, r) = rest.div_rem(&base);
        if !r.is_zero() {
            return Err(Error::NotPolycyclicShape(whole.to_string(), k));
        }
        rest = q;
        len += 1;
    }
    KbnElement::new(k, len, class.residue().clone())
}

/// Composition of elements in the image of [`theta`], computed through
/// k-residues and cancellation instead of the Chinese remainder theorem.
pub fn poly_compose_arith(k: u32, lhs: &ArithElement, rhs: &ArithElement) -> Result<ArithElement> {
    check_alphabet(k)?;
    let shape = |e: &ArithElement| -> Result<Option<(KbnElement, KbnElement)>> {
        match e {
            ArithElement::Zero => Ok(None),
            ArithElement::NormalForm { dom, img } => {
                Ok(Some((class_to_kbn(k, img, e)?, class_to_kbn(k, dom, e)?)))
            }
        }
    };
    let (Some((x, w)), Some((v, u))) = (shape(lhs)?, shape(rhs)?) else {
        return Ok(ArithElement::Zero);
    };
    if k_residue(k, &w, &v) {
        let s = kbn_compose(k, &kbn_cancel(k, &w, &v)?, &u)?;
        return Ok(ArithElement::between(s.class(k), x.class(k)));
    }
    if k_residue(k, &v, &w) {
        let t = kbn_compose(k, &kbn_cancel(k, &v, &w)?, &x)?;
        return Ok(ArithElement::between(u.class(k), t.class(k)));
    }
    Ok(ArithElement::Zero)
}
