//! The skew polynomial ring `D[t; σ]` with left coefficients and
//! `t·a = σ(a)·t`, where `σ(x) = x²`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::puiseux::DyadicPuiseux;
use super::ratfunc::DyadicRatFunc;
use crate::error::ParseError;
use crate::parse::{evaluate, Evaluator};

/// `Σ aᵢ·tⁱ` with `aᵢ ∈ D`; no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SkewPoly {
    coeffs: Vec<DyadicRatFunc>,
}

impl SkewPoly {
    pub fn from_coeffs(mut coeffs: Vec<DyadicRatFunc>) -> Self {
        while coeffs.last().is_some_and(DyadicRatFunc::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::coefficient(DyadicRatFunc::one())
    }

    pub fn t() -> Self {
        Self::from_coeffs(vec![DyadicRatFunc::zero(), DyadicRatFunc::one()])
    }

    /// `a·t⁰`.
    pub fn coefficient(a: DyadicRatFunc) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// `a·tⁿ`.
    pub fn term(a: DyadicRatFunc, n: usize) -> Self {
        let mut coeffs = vec![DyadicRatFunc::zero(); n];
        coeffs.push(a);
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[DyadicRatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = DyadicRatFunc::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a.add(b)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        SkewPoly {
            coeffs: self.coeffs.iter().map(DyadicRatFunc::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `(a·tⁱ)(b·tʲ) = a·σⁱ(b)·t^(i+j)`, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![DyadicRatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&b.sigma(i as i64)));
            }
        }
        Self::from_coeffs(out)
    }

    /// Every coefficient lies in `K(x)`, i.e. the element is in
    /// `K(x)[t; σ]`.
    pub fn in_base(&self) -> bool {
        self.coeffs.iter().all(DyadicRatFunc::in_base_field)
    }

    /// The automorphism extended by `σ(t) = t`.
    pub fn sigma(&self, k: i64) -> Self {
        SkewPoly {
            coeffs: self.coeffs.iter().map(|a| a.sigma(k)).collect(),
        }
    }

    /// The `a` with `a·c = self`, if it exists.
    pub fn right_divide(&self, c: &Self) -> Option<Self> {
        let m = c.degree().expect("division by zero");
        let cm = &c.coeffs[m];
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        while let Some(d) = rest.degree() {
            if d < m {
                return None;
            }
            let n = d - m;
            let lead = rest.coeffs[d].div(&cm.sigma(n as i64)).expect("nonzero leading coefficient");
            let step = Self::term(lead, n);
            rest = rest.sub(&step.mul(c));
            quotient = quotient.add(&step);
        }
        Some(quotient)
    }
}

/// Free-function form of [`SkewPoly::mul`].
pub fn skew_mul(p: &SkewPoly, q: &SkewPoly) -> SkewPoly {
    p.mul(q)
}

/// Free-function form of [`SkewPoly::in_base`].
pub fn skew_in_r(p: &SkewPoly) -> bool {
    p.in_base()
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let t = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (a.as_constant(), t.is_empty()) {
                (_, true) => write!(f, "({a})")?,
                (Some(c), false) if c == BigRational::from_integer(1.into()) => f.write_str(&t)?,
                _ => write!(f, "({a})*{t}")?,
            }
        }
        Ok(())
    }
}

struct SkewEval;

impl SkewEval {
    fn as_coefficient(p: &SkewPoly) -> Option<DyadicRatFunc> {
        match p.degree() {
            None => Some(DyadicRatFunc::zero()),
            Some(0) => Some(p.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl Evaluator for SkewEval {
    type Value = SkewPoly;

    fn number(&self, n: &BigInt) -> SkewPoly {
        SkewPoly::coefficient(DyadicRatFunc::from(n.clone()))
    }
    fn variable(&self, name: &str) -> Option<SkewPoly> {
        match name {
            "x" => Some(SkewPoly::coefficient(DyadicRatFunc::x())),
            "t" => Some(SkewPoly::t()),
            _ => None,
        }
    }
    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.add(b)
    }
    fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.sub(b)
    }
    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        a.mul(b)
    }
    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        a.neg()
    }
    fn div(&self, a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly, String> {
        let inv = Self::as_coefficient(b)
            .and_then(|c| c.inv())
            .ok_or("division is only allowed by nonzero elements of D")?;
        Ok(a.mul(&SkewPoly::coefficient(inv)))
    }
    fn pow(&self, a: &SkewPoly, q: &BigRational) -> Result<SkewPoly, String> {
        if q.is_integer() {
            let n = q.to_integer();
            let k = n.abs().to_u32().ok_or("exponent too large")?;
            let base = if n.is_negative() {
                let c = Self::as_coefficient(a)
                    .and_then(|c| c.inv())
                    .ok_or("negative powers need an invertible element of D")?;
                SkewPoly::coefficient(c)
            } else {
                a.clone()
            };
            return Ok((0..k).fold(SkewPoly::one(), |acc, _| acc.mul(&base)));
        }
        // fractional powers of x only
        let c = Self::as_coefficient(a).ok_or("fractional exponents apply only to powers of x")?;
        let p = c.numerator();
        let (e, lc) = p
            .terms()
            .next()
            .filter(|_| c.denominator() == DyadicPuiseux::one() && p.terms().count() == 1)
            .ok_or("fractional exponents apply only to powers of x")?;
        if lc != &BigRational::from_integer(1.into()) {
            return Err("fractional exponents apply only to powers of x".into());
        }
        let exp = e * q;
        if !DyadicPuiseux::valid_exponent(&exp) {
            return Err(format!("x^({exp}) is not a dyadic Puiseux monomial"));
        }
        let m = DyadicPuiseux::monomial(BigRational::from_integer(1.into()), exp);
        Ok(SkewPoly::coefficient(DyadicRatFunc::from_puiseux(&m)))
    }
}

impl std::str::FromStr for SkewPoly {
    type Err = ParseError;

    /// Left-coefficient syntax such as `x*t^2 + (1/(x+1))*t`.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        evaluate(&SkewEval, text)
    }
}
