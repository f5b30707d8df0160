//! The Cohn-Jordan extension `A(R; S)`.
//!
//! Every element of `A` is `φ_s⁻¹(b)` for some `s ∈ S`, `b ∈ R`. We store the
//! pair `(s, b)` reduced so that no generator of `S` can be divided out of
//! `s` (the numerator is not in the image of that generator). Arithmetic
//! lifts both operands to the Ore common denominator, combines numerators in
//! `R`, and reduces again.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, RngCore};

use crate::error::ParseError;
use crate::monoid::{GroupElement, MonoidElement};
use crate::parse::{evaluate, natural_exponent, Evaluator, Expr, RingEval};
use crate::ring::{RingElement, SRing};

/// `φ_denom⁻¹(num)`, kept in reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElement<E> {
    denom: MonoidElement,
    num: E,
}

impl<E: RingElement> ExtElement<E> {
    /// Builds a pair without reducing it. Callers must pass a reduced pair
    /// (used by explicit models, whose own canonical forms are minimal).
    pub fn from_reduced_parts(denom: MonoidElement, num: E) -> Self {
        ExtElement { denom, num }
    }

    pub fn denom(&self) -> &MonoidElement {
        &self.denom
    }

    pub fn num(&self) -> &E {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the element lies in `R` (trivial denominator).
    pub fn in_base(&self) -> bool {
        self.denom.is_identity()
    }
}

impl<E: fmt::Display> fmt::Display for ExtElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inv({})[{}]", self.denom, self.num)
    }
}

/// A model's answer to a membership question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelAnswer {
    pub member: bool,
    pub reason: String,
}

/// An explicit, independently implemented model of `A` used as an oracle.
pub trait ModelOracle<R: SRing>: Send + Sync {
    fn name(&self) -> &'static str;

    /// The image of `a` in the model, as text.
    fn render(&self, a: &ExtElement<R::Elem>) -> String;

    /// Decides `a ∈ A·gens` when the model can.
    fn member(&self, a: &ExtElement<R::Elem>, gens: &[ExtElement<R::Elem>]) -> Option<ModelAnswer>;

    /// Generators of `A·gens ∩ R`, when the model can compute it.
    fn contraction(&self, gens: &[ExtElement<R::Elem>]) -> Option<Vec<R::Elem>>;

    /// A single generator of `A·gens`, when the model can find one.
    fn principal_generator(&self, gens: &[ExtElement<R::Elem>]) -> Option<ExtElement<R::Elem>>;
}

/// Arithmetic context for `A(R; S)`.
#[derive(Clone)]
pub struct Extension<R: SRing> {
    ring: R,
    model: Option<Arc<dyn ModelOracle<R>>>,
}

impl<R: SRing> fmt::Debug for Extension<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Extension")
            .field("ring", &self.ring.descriptor())
            .field("model", &self.model.as_ref().map(|m| m.name()))
            .finish()
    }
}

pub type Ext<R> = ExtElement<<R as SRing>::Elem>;

impl<R: SRing> Extension<R> {
    /// Uses the ring's registered model, if any.
    pub fn new(ring: R) -> Self {
        let model = ring.registered_model();
        Extension { ring, model }
    }

    /// Pure fraction arithmetic with no model oracle attached.
    pub fn without_model(ring: R) -> Self {
        Extension { ring, model: None }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn model(&self) -> Option<&dyn ModelOracle<R>> {
        self.model.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// Greedily divides generators out of `s` while the numerator stays in
    /// the image. For rank one the result is unique by injectivity.
    pub fn normalize(&self, s: MonoidElement, r: R::Elem) -> Ext<R> {
        let mut s = s;
        let mut r = r;
        if r.is_zero() {
            return ExtElement {
                denom: MonoidElement::identity(self.rank()),
                num: r,
            };
        }
        let k = self.rank();
        loop {
            let mut progressed = false;
            for i in 0..k {
                if s.exponents()[i] == 0 {
                    continue;
                }
                let e = MonoidElement::unit(k, i);
                if let Some(pre) = self.ring.preimage(&e, &r) {
                    r = pre;
                    s = s.divide_exact(&e).expect("exponent is positive");
                    progressed = true;
                }
            }
            if !progressed {
                return ExtElement { denom: s, num: r };
            }
        }
    }

    pub fn embed(&self, r: R::Elem) -> Ext<R> {
        self.normalize(MonoidElement::identity(self.rank()), r)
    }

    /// `φ_s⁻¹(r)` for `r ∈ R`.
    pub fn inverse_image(&self, s: &MonoidElement, r: R::Elem) -> Ext<R> {
        self.normalize(s.clone(), r)
    }

    pub fn zero(&self) -> Ext<R> {
        self.embed(R::Elem::zero())
    }

    pub fn one(&self) -> Ext<R> {
        self.embed(R::Elem::one())
    }

    /// Numerator of `a` over the denominator `t`; requires `a.denom | t`.
    pub fn lift(&self, a: &Ext<R>, t: &MonoidElement) -> R::Elem {
        let u = t
            .divide_exact(&a.denom)
            .expect("lift target must be a multiple of the denominator");
        self.ring.act(&u, &a.num)
    }

    fn combine(&self, a: &Ext<R>, b: &Ext<R>, op: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Ext<R> {
        let (t1, t2) = a.denom.ore_pair(&b.denom);
        let common = t1.compose(&a.denom);
        let x = self.ring.act(&t1, &a.num);
        let y = self.ring.act(&t2, &b.num);
        self.normalize(common, op(&x, &y))
    }

    pub fn add(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.combine(a, b, |x, y| x.plus(y))
    }

    pub fn sub(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.combine(a, b, |x, y| x.minus(y))
    }

    pub fn mul(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.combine(a, b, |x, y| x.times(y))
    }

    pub fn neg(&self, a: &Ext<R>) -> Ext<R> {
        ExtElement {
            denom: a.denom.clone(),
            num: a.num.negate(),
        }
    }

    pub fn pow(&self, a: &Ext<R>, e: u32) -> Ext<R> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Equality through the common lift; agrees with structural equality of
    /// reduced forms.
    pub fn ext_eq(&self, a: &Ext<R>, b: &Ext<R>) -> bool {
        let (t1, t2) = a.denom.ore_pair(&b.denom);
        self.ring.act(&t1, &a.num) == self.ring.act(&t2, &b.num)
    }

    /// The automorphism `φ_g` of `A` for `g = s - t` in the group of
    /// quotients.
    pub fn act(&self, g: &GroupElement, a: &Ext<R>) -> Ext<R> {
        let (s, t) = g.split();
        self.normalize(a.denom.compose(&t), self.ring.act(&s, &a.num))
    }

    pub fn act_monoid(&self, s: &MonoidElement, a: &Ext<R>) -> Ext<R> {
        self.act(&s.to_group(), a)
    }

    /// `φ_s(a)` as an element of `R`, when it lies there.
    pub fn to_base(&self, s: &MonoidElement, a: &Ext<R>) -> Option<R::Elem> {
        s.divide_exact(&a.denom).map(|u| self.ring.act(&u, &a.num))
    }

    /// Common denominator of a family: every `φ_t(a)` lands in `R`.
    pub fn common_denominator<'a>(&self, elems: impl IntoIterator<Item = &'a Ext<R>>) -> MonoidElement {
        elems
            .into_iter()
            .fold(MonoidElement::identity(self.rank()), |acc, a| acc.lcm(&a.denom))
    }

    pub fn parse_element(&self, text: &str) -> Result<Ext<R>, ParseError> {
        evaluate(&ExtEval { ext: self }, text)
    }

    /// A random `φ_s⁻¹(b)` with every exponent of `s` at most `max_shift`.
    pub fn sample(&self, rng: &mut dyn RngCore, max_shift: u32, max_degree: usize, height: i64) -> Ext<R> {
        let s = MonoidElement::new((0..self.rank()).map(|_| rng.random_range(0..=max_shift)).collect());
        let b = self.ring.sample_element(rng, max_degree, height);
        self.normalize(s, b)
    }

    /// Model rendering of `a`, if a model is registered.
    pub fn render_model(&self, a: &Ext<R>) -> Option<String> {
        self.model.as_ref().map(|m| m.render(a))
    }
}

struct ExtEval<'a, R: SRing> {
    ext: &'a Extension<R>,
}

impl<R: SRing> ExtEval<'_, R> {
    fn base_constant(&self, a: &Ext<R>) -> Option<BigRational> {
        if a.in_base() {
            self.ext.ring.constant_value(&a.num)
        } else {
            None
        }
    }
}

impl<R: SRing> Evaluator for ExtEval<'_, R> {
    type Value = Ext<R>;

    fn number(&self, n: &BigInt) -> Ext<R> {
        let c = self
            .ext
            .ring
            .constant(&BigRational::from_integer(n.clone()))
            .expect("integers lie in every unital ring");
        self.ext.embed(c)
    }
    fn variable(&self, name: &str) -> Option<Ext<R>> {
        (name == "x").then(|| self.ext.embed(self.ext.ring.variable()))
    }
    fn add(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.ext.add(a, b)
    }
    fn sub(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.ext.sub(a, b)
    }
    fn mul(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        self.ext.mul(a, b)
    }
    fn neg(&self, a: &Ext<R>) -> Ext<R> {
        self.ext.neg(a)
    }
    fn div(&self, a: &Ext<R>, b: &Ext<R>) -> Result<Ext<R>, String> {
        let q = self
            .base_constant(b)
            .ok_or("division is only allowed by nonzero constants")?;
        if q == BigRational::from_integer(0.into()) {
            return Err("division by zero".into());
        }
        let inv = self
            .ext
            .ring
            .constant(&q.recip())
            .ok_or_else(|| format!("1/{q} is not an element of the base ring; use inv(s)[..]"))?;
        Ok(self.ext.mul(a, &self.ext.embed(inv)))
    }
    fn pow(&self, a: &Ext<R>, e: &BigRational) -> Result<Ext<R>, String> {
        Ok(self.ext.pow(a, natural_exponent(e)?))
    }
    fn inv(&self, s: &MonoidElement, inner: &Expr) -> Result<Ext<R>, ParseError> {
        if s.rank() != self.ext.rank() {
            return Err(ParseError::new(
                inner.pos,
                format!("monoid element {s} has rank {}, expected {}", s.rank(), self.ext.rank()),
            ));
        }
        let r = RingEval(&self.ext.ring).eval(inner)?;
        Ok(self.ext.inverse_image(s, r))
    }
}
