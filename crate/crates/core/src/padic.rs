//! p-adic order, norm and distance on ℕ, and their reading through the
//! prime-order polycyclic embeddings.

use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::ArithElement;
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, Natural, Rational};
use crate::polycyclic::{PolyElement, Word};

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(&Natural::from(p)) {
        return Err(Error::NotPrime(p.into()));
    }
    Ok(())
}

fn check_positive(n: &Natural, what: &'static str) -> Result<()> {
    if n.is_zero() {
        return Err(Error::TooSmall {
            what,
            min: 1,
            value: n.clone(),
        });
    }
    Ok(())
}

/// The exponent of `p` in `n`.
pub fn ord(p: u32, n: &Natural) -> Result<u64> {
    check_prime(p)?;
    check_positive(n, "argument of ord")?;
    let p = Natural::from(p);
    let mut rest = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

/// `p^(−ord_p n)`, with the norm of 0 taken to be 0.
pub fn norm(p: u32, n: &Natural) -> Result<Rational> {
    check_prime(p)?;
    if n.is_zero() {
        return Ok(Rational::zero());
    }
    let k = ord(p, n)?;
    Ok(Rational::new(
        Natural::one(),
        crate::numtheory::pow(&Natural::from(p), k),
    ))
}

pub fn distance(p: u32, a: &Natural, b: &Natural) -> Result<Rational> {
    let gap = if a <= b { b - a } else { a - b };
    norm(p, &gap)
}

/// The norm recovered as `min_k θ_p(0^k)(n) / n` over the `k` for which
/// `θ_p(0^k)` is defined at `n`.
pub fn norm_via_polycyclic(p: u32, n: &Natural) -> Result<Rational> {
    check_prime(p)?;
    check_positive(n, "argument of the polycyclic norm")?;
    let mut smallest = n.clone();
    let mut zeros = Vec::new();
    loop {
        zeros.push(0);
        let step = PolyElement::new(Word::empty(p)?, Word::new(p, zeros.clone())?)?.theta();
        match step.apply(n) {
            Some(v) => smallest = smallest.min(v),
            None => break,
        }
    }
    Ok(Rational::new(smallest, n.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitOrder {
    /// Most significant digit first, as in the numeric reading of words.
    MsbFirst,
    LsbFirst,
}

impl fmt::Display for DigitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitOrder::MsbFirst => write!(f, "msb"),
            DigitOrder::LsbFirst => write!(f, "lsb"),
        }
    }
}

type DigitFn = Arc<dyn Fn(u64) -> u32 + Send + Sync>;

#[derive(Clone)]
enum Digits {
    /// Finitely many digits followed by zeros.
    Finite(Vec<u32>),
    /// An arbitrary stream inspected at most `bound` times.
    Stream { digit: DigitFn, bound: u64 },
}

/// A one-sided infinite word over `{0,…,p−1}`.
///
/// Either eventually zero, or carrying a declared inspection bound; in both
/// cases evaluation only ever looks at finitely many digits.
#[derive(Clone)]
pub struct CantorPoint {
    prime: u32,
    digits: Digits,
    order: Option<DigitOrder>,
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.digits {
            Digits::Finite(d) => f
                .debug_struct("CantorPoint")
                .field("prime", &self.prime)
                .field("prefix", d)
                .field("order", &self.order)
                .finish(),
            Digits::Stream { bound, .. } => f
                .debug_struct("CantorPoint")
                .field("prime", &self.prime)
                .field("bound", bound)
                .finish_non_exhaustive(),
        }
    }
}

impl CantorPoint {
    /// `000…`
    pub fn constant_zero(p: u32) -> Result<Self> {
        CantorPoint::finite(p, Vec::new())
    }

    /// The given digits followed by zeros.
    pub fn finite(p: u32, digits: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if let Some(&digit) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::DigitOutOfRange { digit, k: p });
        }
        Ok(CantorPoint {
            prime: p,
            digits: Digits::Finite(digits),
            order: None,
        })
    }

    /// The base-`p` digits of `a ≥ 1` in the chosen order, then zeros.
    pub fn cant(p: u32, a: &Natural, order: DigitOrder) -> Result<Self> {
        check_prime(p)?;
        check_positive(a, "Cantor point seed")?;
        let base = Natural::from(p);
        let mut digits = Vec::new();
        let mut rest = a.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&base);
            digits.push(r.to_u32().expect("digit below p"));
            rest = q;
        }
        if order == DigitOrder::MsbFirst {
            digits.reverse();
        }
        let mut point = CantorPoint::finite(p, digits)?;
        point.order = Some(order);
        Ok(point)
    }

    /// A user-supplied stream. `digit` must be a pure function; only the
    /// first `bound` digits are ever inspected.
    pub fn from_fn<F>(p: u32, bound: u64, digit: F) -> Result<Self>
    where
        F: Fn(u64) -> u32 + Send + Sync + 'static,
    {
        check_prime(p)?;
        Ok(CantorPoint {
            prime: p,
            digits: Digits::Stream {
                digit: Arc::new(digit),
                bound,
            },
            order: None,
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// The digit convention, for points built by [`CantorPoint::cant`].
    pub fn order(&self) -> Option<DigitOrder> {
        self.order
    }

    /// Digit at position `i`. Stream digits are reduced modulo `p`.
    pub fn digit(&self, i: u64) -> u32 {
        match &self.digits {
            Digits::Finite(d) => usize::try_from(i)
                .ok()
                .and_then(|i| d.get(i).copied())
                .unwrap_or(0),
            Digits::Stream { digit, .. } => digit(i) % self.prime,
        }
    }

    /// Position from which every digit is zero, if known.
    pub fn zero_from(&self) -> Option<u64> {
        match &self.digits {
            Digits::Finite(d) => Some(d.len() as u64),
            Digits::Stream { .. } => None,
        }
    }

    pub fn inspection_bound(&self) -> Option<u64> {
        match &self.digits {
            Digits::Finite(_) => None,
            Digits::Stream { bound, .. } => Some(*bound),
        }
    }
}

/// Result of [`eval_gamma_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    /// Non-empty prefixes examined.
    pub inspected: u64,
}

/// `min { θ_p(w)(n) / n : w a prefix of Γ }`, over the prefixes at which
/// `θ_p(w)` is defined. The empty prefix always contributes 1.
pub fn eval_gamma(gamma: &CantorPoint, n: &Natural) -> Result<Rational> {
    eval_gamma_traced(gamma, n).map(|e| e.value)
}

pub fn eval_gamma_traced(gamma: &CantorPoint, n: &Natural) -> Result<Evaluation> {
    check_positive(n, "argument of eval")?;
    let p = Natural::from(gamma.prime);
    let mut best = n.clone();
    let mut len = 0u64;
    let mut num = Natural::zero();
    let mut modulus = Natural::one();
    loop {
        if gamma.inspection_bound().is_some_and(|b| len >= b) {
            break;
        }
        // θ_p(w) is defined at n only if num(w) = n mod p^|w|, so num(w) ≤ n.
        // Past that point num only grows.
        if !num.is_zero() && &num * &p > *n {
            break;
        }
        if num.is_zero() && gamma.zero_from().is_some_and(|z| len >= z) && &modulus * &p > *n {
            break;
        }
        num = num * &p + gamma.digit(len);
        modulus *= &p;
        len += 1;
        let step = ArithElement::generator(modulus.clone(), num.clone())
            .expect("prefix value below p^len");
        if let Some(v) = step.apply(n) {
            best = best.min(v);
        }
    }
    Ok(Evaluation {
        value: Rational::new(best, n.clone()),
        inspected: len,
    })
}

/// Outcome of checking `eval_{cant(a)}(n) = ‖n − a‖_p` on a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCell {
    pub prime: u32,
    pub order: DigitOrder,
    pub cases: u64,
    pub holds: u64,
    /// `(a, n, eval, distance)` for the first few failures.
    pub counterexamples: Vec<(u64, u64, Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub a_max: u64,
    pub n_max: u64,
    pub cells: Vec<AuditCell>,
}

const MAX_COUNTEREXAMPLES: usize = 5;

/// Compares the Cantor-point evaluation with the p-adic distance for every
/// prime in `primes`, `1 ≤ a ≤ a_max`, `a < n ≤ n_max`, under both digit
/// orders. Nothing is asserted; the report records where equality holds.
pub fn corollary_audit(primes: &[u32], a_max: u64, n_max: u64) -> Result<AuditReport> {
    let mut cells = Vec::new();
    for &p in primes {
        for order in [DigitOrder::MsbFirst, DigitOrder::LsbFirst] {
            let mut cell = AuditCell {
                prime: p,
                order,
                cases: 0,
                holds: 0,
                counterexamples: Vec::new(),
            };
            for a in 1..=a_max {
                let gamma = CantorPoint::cant(p, &Natural::from(a), order)?;
                for n in (a + 1)..=n_max {
                    let n_nat = Natural::from(n);
                    let lhs = eval_gamma(&gamma, &n_nat)?;
                    let rhs = distance(p, &n_nat, &Natural::from(a))?;
                    cell.cases += 1;
                    if lhs == rhs {
                        cell.holds += 1;
                    } else if cell.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        cell.counterexamples.push((a, n, lhs, rhs));
                    }
                }
            }
            cells.push(cell);
        }
    }
    Ok(AuditReport {
        a_max,
        n_max,
        cells,
    })
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "eval_cant(a)(n) vs |n-a|_p for 1 <= a <= {}, a < n <= {}",
            self.a_max, self.n_max
        )?;
        for cell in &self.cells {
            writeln!(
                f,
                "p={} order={}: holds {}/{} ({} fail)",
                cell.prime,
                cell.order,
                cell.holds,
                cell.cases,
                cell.cases - cell.holds
            )?;
            for (a, n, lhs, rhs) in &cell.counterexamples {
                writeln!(f, "  a={a} n={n}: eval={lhs} distance={rhs}")?;
            }
        }
        Ok(())
    }
}

/// Writes `n,numerator,denominator` rows of `‖n‖_p` for `from ≤ n ≤ to`.
pub fn write_norm_table<W: Write>(p: u32, from: u64, to: u64, mut out: W) -> Result<()> {
    check_prime(p)?;
    let io_err = |e: io::Error| Error::Malformed(format!("write failed: {e}"));
    writeln!(out, "n,norm_numerator,norm_denominator").map_err(io_err)?;
    for n in from..=to {
        let v = norm(p, &Natural::from(n))?;
        writeln!(out, "{n},{},{}", v.numer(), v.denom()).map_err(io_err)?;
    }
    Ok(())
}
