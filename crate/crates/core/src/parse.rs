//! A small expression grammar shared by every textual element syntax.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?
//! exponent:= integer | '(' '-'? integer ('/' integer)? ')'
//! atom    := integer | ident | '(' expr ')' | 'inv' '(' monoid ')' '[' expr ']'
//! ```
//!
//! Evaluation is delegated to an [`Evaluator`] so that polynomials, extension
//! elements, Puiseux polynomials and skew polynomials share one parser.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::monoid::MonoidElement;
use crate::ring::{RingElement, SRing};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
    Inv(MonoidElement, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos;
            let kind = if self.eat(b'+') {
                ExprKind::Add(Box::new(lhs), Box::new(self.term()?))
            } else if self.eat(b'-') {
                ExprKind::Sub(Box::new(lhs), Box::new(self.term()?))
            } else {
                return Ok(lhs);
            };
            lhs = Expr { kind, pos };
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos;
            let kind = if self.eat(b'*') {
                ExprKind::Mul(Box::new(lhs), Box::new(self.unary()?))
            } else if self.eat(b'/') {
                ExprKind::Div(Box::new(lhs), Box::new(self.unary()?))
            } else {
                return Ok(lhs);
            };
            lhs = Expr { kind, pos };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos;
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                pos,
            });
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let pos = self.pos;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let num = self.integer()?;
            let den = if self.eat(b'/') {
                self.integer()?
            } else {
                BigInt::one()
            };
            self.expect(b')')?;
            if den.is_zero() {
                return Err(self.error("zero denominator in exponent"));
            }
            let q = BigRational::new(num, den);
            if neg {
                -q
            } else {
                q
            }
        } else {
            BigRational::from_integer(self.integer()?)
        };
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), exp),
            pos,
        })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Expr {
                kind: ExprKind::Num(self.integer()?),
                pos,
            }),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                if name == "inv" {
                    self.expect(b'(')?;
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos] != b')' {
                        self.pos += 1;
                    }
                    let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    let s: MonoidElement = text
                        .parse()
                        .map_err(|_| ParseError::new(start, format!("bad monoid element {text:?}")))?;
                    self.expect(b')')?;
                    self.expect(b'[')?;
                    let inner = self.expr()?;
                    self.expect(b']')?;
                    Ok(Expr {
                        kind: ExprKind::Inv(s, Box::new(inner)),
                        pos,
                    })
                } else {
                    Ok(Expr {
                        kind: ExprKind::Var(name),
                        pos,
                    })
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Interprets parsed expressions in a concrete algebra.
pub trait Evaluator {
    type Value: Clone;

    fn number(&self, n: &BigInt) -> Self::Value;
    fn variable(&self, name: &str) -> Option<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn pow(&self, a: &Self::Value, exponent: &BigRational) -> Result<Self::Value, String>;

    fn inv(&self, _s: &MonoidElement, _inner: &Expr) -> Result<Self::Value, ParseError> {
        Err(ParseError::new(0, "inv(..)[..] is not allowed here"))
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value, ParseError>
    where
        Self: Sized,
    {
        let fail = |msg: String| ParseError::new(e.pos, msg);
        Ok(match &e.kind {
            ExprKind::Num(n) => self.number(n),
            ExprKind::Var(v) => self
                .variable(v)
                .ok_or_else(|| fail(format!("unknown variable {v:?}")))?,
            ExprKind::Neg(a) => self.neg(&self.eval(a)?),
            ExprKind::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?),
            ExprKind::Sub(a, b) => self.sub(&self.eval(a)?, &self.eval(b)?),
            ExprKind::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            ExprKind::Div(a, b) => self.div(&self.eval(a)?, &self.eval(b)?).map_err(fail)?,
            ExprKind::Pow(a, q) => self.pow(&self.eval(a)?, q).map_err(fail)?,
            ExprKind::Inv(s, inner) => self.inv(s, inner).map_err(|err| {
                if err.position == 0 {
                    ParseError::new(e.pos, err.message)
                } else {
                    err
                }
            })?,
        })
    }
}

/// Parses and evaluates in one step.
pub fn evaluate<E: Evaluator>(ev: &E, text: &str) -> Result<E::Value, ParseError> {
    ev.eval(&parse_expr(text)?)
}

/// Nonnegative integer exponent, or an error message.
pub fn natural_exponent(q: &BigRational) -> Result<u32, String> {
    if !q.is_integer() || q < &BigRational::zero() {
        return Err(format!("exponent {q} must be a nonnegative integer"));
    }
    u32::try_from(q.to_integer()).map_err(|_| format!("exponent {q} too large"))
}

/// Evaluates expressions inside a base ring `R`.
pub struct RingEval<'a, R>(pub &'a R);

impl<R: SRing> Evaluator for RingEval<'_, R> {
    type Value = R::Elem;

    fn number(&self, n: &BigInt) -> R::Elem {
        self.0
            .constant(&BigRational::from_integer(n.clone()))
            .expect("integers lie in every unital ring")
    }
    fn variable(&self, name: &str) -> Option<R::Elem> {
        (name == "x").then(|| self.0.variable())
    }
    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        a.plus(b)
    }
    fn sub(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        a.minus(b)
    }
    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        a.times(b)
    }
    fn neg(&self, a: &R::Elem) -> R::Elem {
        a.negate()
    }
    fn div(&self, a: &R::Elem, b: &R::Elem) -> Result<R::Elem, String> {
        let q = self
            .0
            .constant_value(b)
            .filter(|q| !q.is_zero())
            .ok_or("division is only allowed by nonzero constants")?;
        let inv = self
            .0
            .constant(&q.recip())
            .ok_or_else(|| format!("1/{q} is not an element of the ring"))?;
        Ok(a.times(&inv))
    }
    fn pow(&self, a: &R::Elem, e: &BigRational) -> Result<R::Elem, String> {
        let n = natural_exponent(e)?;
        Ok((0..n).fold(R::Elem::one(), |acc, _| acc.times(a)))
    }
}

/// Splits `"a; b; c"` at top-level semicolons (brackets may nest).
pub fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
