//! Element expressions.
//!
//! ```text
//! expr := atom { ["*" | "∘"] atom }
//! atom := "R(" nat "," nat ")"          generator R(a,b)
//!       | "R‡(" nat "," nat ")"         its inverse (also "R^(")
//!       | "dag(" expr ")" | "id" | "zero" | "(" expr ")"
//!       | "[" nat "," nat "]+"          bicyclic [b,a], via b ↦ 2^b
//!       | "[" nat "," nat "]*"          Leech [m,n]
//!       | "P(" nat ";" word "," word ")"  polycyclic v‡u over k letters
//! ```
//!
//! Products read like the algebra: the rightmost factor is applied first.

use std::fmt;

use arith_monoid::classical::{BicyclicElement, LeechElement};
use arith_monoid::polycyclic::{self, PolyElement, Word};
use arith_monoid::{ArithElement, Natural};
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Generator { a: Natural, b: Natural, at: usize },
    GeneratorDagger { c: Natural, d: Natural, at: usize },
    Dagger(Box<Expr>),
    Identity,
    Zero,
    /// Factors left to right.
    Product(Vec<Expr>),
    Bicyclic { b: Natural, a: Natural, at: usize },
    Leech { m: Natural, n: Natural, at: usize },
    Poly { k: Natural, up: String, down: String, at: usize },
}

/// A syntax error; `offset` is the 1-based byte position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("in `{fragment}` at offset {offset}: {source}")]
pub struct EvalError {
    pub offset: usize,
    pub fragment: String,
    pub source: arith_monoid::Error,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

const ATOM: &[&str] = &["R(", "R‡(", "dag(", "id", "zero", "(", "[", "P("];

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(&["\"*\"", "end of input"]));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        SyntaxError {
            offset: self.pos + 1,
            expected: expected.to_vec(),
            found,
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &'static str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[token]))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        let boundary = rest[word.len().min(rest.len())..]
            .chars()
            .next()
            .is_none_or(|c| !c.is_alphanumeric());
        if rest.starts_with(word) && boundary {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<Natural, SyntaxError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(&["natural number"]));
        }
        let value = self.rest()[..digits].parse().expect("ascii digits");
        self.pos += digits;
        Ok(value)
    }

    fn word(&mut self) -> Result<String, SyntaxError> {
        self.expect("\"")?;
        let Some(len) = self.rest().find('"') else {
            return Err(self.error(&["closing '\"'"]));
        };
        let w = self.rest()[..len].to_string();
        self.pos += len + 1;
        Ok(w)
    }

    fn pair(&mut self) -> Result<(Natural, Natural), SyntaxError> {
        let x = self.nat()?;
        self.expect(",")?;
        let y = self.nat()?;
        Ok((x, y))
    }

    fn starts_atom(&mut self) -> bool {
        self.skip_ws();
        let rest = self.rest();
        ATOM.iter().any(|t| rest.starts_with(t)) || rest.starts_with("R^(")
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut factors = vec![self.atom()?];
        loop {
            if self.eat("*") || self.eat("∘") || self.starts_atom() {
                factors.push(self.atom()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        })
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        let at = self.pos + 1;
        if self.eat("R‡(") || self.eat("R^(") {
            let (c, d) = self.pair()?;
            self.expect(")")?;
            return Ok(Expr::GeneratorDagger { c, d, at });
        }
        if self.eat("R(") {
            let (a, b) = self.pair()?;
            self.expect(")")?;
            return Ok(Expr::Generator { a, b, at });
        }
        if self.eat("dag(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(Expr::Dagger(Box::new(inner)));
        }
        if self.eat("P(") {
            let k = self.nat()?;
            self.expect(";")?;
            let up = self.word()?;
            self.expect(",")?;
            let down = self.word()?;
            self.expect(")")?;
            return Ok(Expr::Poly { k, up, down, at });
        }
        if self.keyword("id") {
            return Ok(Expr::Identity);
        }
        if self.keyword("zero") {
            return Ok(Expr::Zero);
        }
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("[") {
            let (x, y) = self.pair()?;
            self.expect("]")?;
            if self.eat("+") {
                return Ok(Expr::Bicyclic { b: x, a: y, at });
            }
            if self.eat("*") {
                return Ok(Expr::Leech { m: x, n: y, at });
            }
            return Err(self.error(&["\"+\"", "\"*\""]));
        }
        Err(self.error(&["\"R(\"", "\"R‡(\"", "\"dag(\"", "\"id\"", "\"zero\"", "\"(\"", "\"[\"", "\"P(\""]))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Generator { a, b, .. } => write!(f, "R({a},{b})"),
            Expr::GeneratorDagger { c, d, .. } => write!(f, "R‡({c},{d})"),
            Expr::Dagger(e) => write!(f, "dag({e})"),
            Expr::Identity => write!(f, "id"),
            Expr::Zero => write!(f, "zero"),
            Expr::Product(factors) => {
                for (i, e) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Bicyclic { b, a, .. } => write!(f, "[{b},{a}]+"),
            Expr::Leech { m, n, .. } => write!(f, "[{m},{n}]*"),
            Expr::Poly { k, up, down, .. } => write!(f, "P({k}; \"{up}\",\"{down}\")"),
        }
    }
}

impl Expr {
    fn offset(&self) -> usize {
        match self {
            Expr::Generator { at, .. }
            | Expr::GeneratorDagger { at, .. }
            | Expr::Bicyclic { at, .. }
            | Expr::Leech { at, .. }
            | Expr::Poly { at, .. } => *at,
            Expr::Dagger(e) => e.offset(),
            Expr::Product(factors) => factors.first().map_or(1, Expr::offset),
            Expr::Identity | Expr::Zero => 1,
        }
    }

    fn fail(&self, source: arith_monoid::Error) -> EvalError {
        EvalError {
            offset: self.offset(),
            fragment: self.to_string(),
            source,
        }
    }

    /// The sub-products of this expression, one per composition performed
    /// during evaluation: `(left, right)` operands in evaluation order.
    pub fn products(&self) -> Result<Vec<(ArithElement, ArithElement)>, EvalError> {
        let mut out = Vec::new();
        self.eval_into(&mut Some(&mut out))?;
        Ok(out)
    }
}

type Trace<'a> = Option<&'a mut Vec<(ArithElement, ArithElement)>>;

impl Expr {
    fn eval_into(&self, trace: &mut Trace<'_>) -> Result<ArithElement, EvalError> {
        match self {
            Expr::Generator { a, b, .. } => {
                ArithElement::generator(a.clone(), b.clone()).map_err(|e| self.fail(e))
            }
            Expr::GeneratorDagger { c, d, .. } => ArithElement::generator(c.clone(), d.clone())
                .map(|g| g.dagger())
                .map_err(|e| self.fail(e)),
            Expr::Dagger(inner) => Ok(inner.eval_into(trace)?.dagger()),
            Expr::Identity => Ok(ArithElement::identity()),
            Expr::Zero => Ok(ArithElement::Zero),
            Expr::Product(factors) => {
                let mut acc = ArithElement::identity();
                for (i, factor) in factors.iter().enumerate() {
                    let next = factor.eval_into(trace)?;
                    if i == 0 {
                        acc = next;
                        continue;
                    }
                    if let Some(t) = trace.as_mut() {
                        t.push((acc.clone(), next.clone()));
                    }
                    acc = acc.compose(&next);
                }
                Ok(acc)
            }
            Expr::Bicyclic { b, a, .. } => BicyclicElement::new(b.clone(), a.clone())
                .exp_embed(2u32)
                .map(|l| l.embed())
                .map_err(|e| self.fail(e)),
            Expr::Leech { m, n, .. } => LeechElement::new(m.clone(), n.clone())
                .map(|l| l.embed())
                .map_err(|e| self.fail(e)),
            Expr::Poly { k, up, down, .. } => {
                let k = k.to_u32().ok_or_else(|| {
                    self.fail(arith_monoid::Error::Malformed(format!("alphabet size {k} too large")))
                })?;
                let element = Word::parse(k, up)
                    .and_then(|v| Ok((v, Word::parse(k, down)?)))
                    .and_then(|(v, u)| PolyElement::new(v, u))
                    .map_err(|e| self.fail(e))?;
                polycyclic::theta(k, &element).map_err(|e| self.fail(e))
            }
        }
    }
}

pub fn evaluate(e: &Expr) -> Result<ArithElement, EvalError> {
    e.eval_into(&mut None)
}
