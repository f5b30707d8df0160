//! `K[x^(1/2^n) | n ∈ ℕ]` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;
use crate::ext::{ExtElement, ModelAnswer, ModelOracle};
use crate::monoid::MonoidElement;
use crate::parse::{evaluate, Evaluator};
use crate::poly::{fmt_terms, QPoly, QPolyRing};

/// Finite sum of `c·x^e` with `e` a nonnegative dyadic rational.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DyadicPuiseux {
    terms: BTreeMap<BigRational, BigRational>,
}

/// `log2` of a power of two, or `None`.
fn log2_exact(n: &BigInt) -> Option<u32> {
    let bits = n.bits();
    (n.is_positive() && n.trailing_zeros() == Some(bits - 1)).then(|| (bits - 1) as u32)
}

fn two_pow(n: u32) -> BigInt {
    BigInt::one() << n as usize
}

impl DyadicPuiseux {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, BigRational::zero())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), BigRational::one())
    }

    /// `c·x^e`. Panics unless `e ≥ 0` has a power-of-two denominator.
    pub fn monomial(c: BigRational, e: BigRational) -> Self {
        assert!(Self::valid_exponent(&e), "exponent {e} is not a nonnegative dyadic rational");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        DyadicPuiseux { terms }
    }

    pub fn valid_exponent(e: &BigRational) -> bool {
        !e.is_negative() && log2_exact(e.denom()).is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient of the largest exponent.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Smallest `n` with every exponent in `2^-n·ℤ`.
    pub fn level(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| log2_exact(e.denom()).expect("dyadic exponent"))
            .max()
            .unwrap_or(0)
    }

    fn insert(terms: &mut BTreeMap<BigRational, BigRational>, e: BigRational, c: BigRational) {
        let slot = terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert(&mut terms, e.clone(), c.clone());
        }
        DyadicPuiseux { terms }
    }

    pub fn neg(&self) -> Self {
        DyadicPuiseux {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                Self::insert(&mut terms, e1 + e2, c1 * c2);
            }
        }
        DyadicPuiseux { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.mul(&Self::constant(c.clone()))
    }

    /// The action `x^e ↦ x^(2^g·e)` of `g ∈ ℤ`.
    pub fn act(&self, g: i64) -> Self {
        let factor = if g >= 0 {
            BigRational::from_integer(two_pow(g as u32))
        } else {
            BigRational::new(BigInt::one(), two_pow(g.unsigned_abs() as u32))
        };
        DyadicPuiseux {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * &factor, c.clone()))
                .collect(),
        }
    }

    /// The ordinary polynomial in `y = x^(1/2^n)`. Requires `n ≥ level`.
    pub fn to_level(&self, n: u32) -> QPoly {
        let scale = BigRational::from_integer(two_pow(n));
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            let k = e * &scale;
            assert!(k.is_integer(), "level {n} is below the element's level");
            let k = k.to_integer().to_usize().expect("exponent fits in memory");
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] = c.clone();
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Reads `p(y)` with `y = x^(1/2^n)`.
    pub fn from_level(n: u32, p: &QPoly) -> Self {
        let den = two_pow(n);
        DyadicPuiseux {
            terms: p
                .terms()
                .map(|(k, c)| (BigRational::new(BigInt::from(k), den.clone()), c.clone()))
                .collect(),
        }
    }

    fn common_level(a: &Self, b: &Self) -> u32 {
        a.level().max(b.level())
    }

    /// Monic gcd computed in `K[y]` at the common level.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let n = Self::common_level(a, b);
        Self::from_level(n, &a.to_level(n).gcd(&b.to_level(n)))
    }

    pub fn gcd_all<'a>(elems: impl IntoIterator<Item = &'a Self>) -> Self {
        elems
            .into_iter()
            .fold(Self::zero(), |acc, e| Self::gcd(&acc, e))
    }

    /// `(g, u, v)` with `u·a + v·b = g = gcd(a, b)`.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let n = Self::common_level(a, b);
        let (g, u, v) = QPoly::xgcd(&a.to_level(n), &b.to_level(n));
        (
            Self::from_level(n, &g),
            Self::from_level(n, &u),
            Self::from_level(n, &v),
        )
    }

    /// `b / a` when it is again a Puiseux polynomial.
    pub fn div_exact(b: &Self, a: &Self) -> Option<Self> {
        assert!(!a.is_zero(), "division by zero");
        let n = Self::common_level(a, b);
        let (q, r) = b.to_level(n).div_rem(&a.to_level(n));
        r.is_zero().then(|| Self::from_level(n, &q))
    }

    /// Does `a` divide `b`?
    pub fn divides(a: &Self, b: &Self) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        Self::div_exact(b, a).is_some()
    }

    /// The monic generator of `A·self ∩ K[x]`, descending one level at a
    /// time: the ideal `(H(y)) ∩ K[y²]` is generated by the even or odd
    /// polynomial `lcm(H(y), H(-y))` (times `y` when odd).
    pub fn contraction(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let n = self.level();
        let mut h = self.to_level(n).monic();
        let minus_one = -BigRational::one();
        for _ in 0..n {
            let mirrored = h.substitute_monomial(&minus_one, 1);
            let g = h.gcd(&mirrored);
            let mut l = h.mul(&mirrored).div_rem(&g).0.monic();
            let odd = l.terms().any(|(e, _)| e % 2 == 1);
            if odd {
                l = l.mul(&QPoly::x());
            }
            h = l.compress(2);
        }
        h
    }
}

impl fmt::Display for DyadicPuiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = fmt_terms(self.terms.iter().rev().map(|(e, c)| {
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "x".to_string()
            } else if e.is_integer() {
                format!("x^{e}")
            } else {
                format!("x^({e})")
            };
            (c.clone(), mono)
        }));
        f.write_str(&body)
    }
}

struct PuiseuxEval;

impl Evaluator for PuiseuxEval {
    type Value = DyadicPuiseux;

    fn number(&self, n: &BigInt) -> DyadicPuiseux {
        DyadicPuiseux::constant(BigRational::from_integer(n.clone()))
    }
    fn variable(&self, name: &str) -> Option<DyadicPuiseux> {
        (name == "x").then(DyadicPuiseux::x)
    }
    fn add(&self, a: &DyadicPuiseux, b: &DyadicPuiseux) -> DyadicPuiseux {
        a.add(b)
    }
    fn sub(&self, a: &DyadicPuiseux, b: &DyadicPuiseux) -> DyadicPuiseux {
        a.sub(b)
    }
    fn mul(&self, a: &DyadicPuiseux, b: &DyadicPuiseux) -> DyadicPuiseux {
        a.mul(b)
    }
    fn neg(&self, a: &DyadicPuiseux) -> DyadicPuiseux {
        a.neg()
    }
    fn div(&self, a: &DyadicPuiseux, b: &DyadicPuiseux) -> Result<DyadicPuiseux, String> {
        match b.terms.iter().next() {
            Some((e, c)) if b.terms.len() == 1 && e.is_zero() => Ok(a.scale(&c.recip())),
            _ => Err("division is only allowed by nonzero constants".into()),
        }
    }
    fn pow(&self, a: &DyadicPuiseux, q: &BigRational) -> Result<DyadicPuiseux, String> {
        if q.is_integer() && !q.is_negative() {
            let n = q.to_integer().to_u32().ok_or("exponent too large")?;
            return Ok((0..n).fold(DyadicPuiseux::one(), |acc, _| acc.mul(a)));
        }
        // fractional powers only of x^e
        match a.terms.iter().next() {
            Some((e, c)) if a.terms.len() == 1 && c.is_one() => {
                let exp = e * q;
                if DyadicPuiseux::valid_exponent(&exp) {
                    Ok(DyadicPuiseux::monomial(BigRational::one(), exp))
                } else {
                    Err(format!("x^({exp}) is not a dyadic Puiseux monomial"))
                }
            }
            _ => Err("fractional exponents apply only to powers of x".into()),
        }
    }
}

impl std::str::FromStr for DyadicPuiseux {
    type Err = ParseError;

    /// Syntax such as `x^(3/4) + 2*x - 1/2`.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        evaluate(&PuiseuxEval, text)
    }
}

/// The isomorphism `A(ℚ[x]; x ↦ x²) ≅ K[x^(1/2^n)]`, sending `φ_s⁻¹(x)` to
/// `x^(1/2^s)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PuiseuxOracle;

impl PuiseuxOracle {
    pub fn to_model(a: &ExtElement<QPoly>) -> DyadicPuiseux {
        DyadicPuiseux::from_level(a.denom().exponents()[0], a.num())
    }

    /// Reads the reduced pair off the minimal level.
    pub fn from_model(m: &DyadicPuiseux) -> ExtElement<QPoly> {
        let n = m.level();
        ExtElement::from_reduced_parts(MonoidElement::single(n), m.to_level(n))
    }

    /// The model ring is built for exactly this action.
    pub fn ring() -> QPolyRing {
        QPolyRing::squaring()
    }

    fn gcd_of(gens: &[ExtElement<QPoly>]) -> DyadicPuiseux {
        DyadicPuiseux::gcd_all(gens.iter().map(Self::to_model).collect::<Vec<_>>().iter())
    }
}

impl ModelOracle<QPolyRing> for PuiseuxOracle {
    fn name(&self) -> &'static str {
        "dyadic-puiseux"
    }

    fn render(&self, a: &ExtElement<QPoly>) -> String {
        Self::to_model(a).to_string()
    }

    fn member(&self, a: &ExtElement<QPoly>, gens: &[ExtElement<QPoly>]) -> Option<ModelAnswer> {
        let g = Self::gcd_of(gens);
        let m = Self::to_model(a);
        let member = DyadicPuiseux::divides(&g, &m);
        let reason = if member {
            format!("in K[x^(1/2^n)] the ideal is generated by {g}, which divides {m}")
        } else {
            format!("in K[x^(1/2^n)] the ideal is generated by {g}, which does not divide {m}")
        };
        Some(ModelAnswer { member, reason })
    }

    fn contraction(&self, gens: &[ExtElement<QPoly>]) -> Option<Vec<QPoly>> {
        let g = Self::gcd_of(gens);
        Some(if g.is_zero() { Vec::new() } else { vec![g.contraction()] })
    }

    fn principal_generator(&self, gens: &[ExtElement<QPoly>]) -> Option<ExtElement<QPoly>> {
        Some(Self::from_model(&Self::gcd_of(gens)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SRing;

    fn p(text: &str) -> DyadicPuiseux {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("x^(1/2)").mul(&p("x^(1/2)")), p("x"));
        assert_eq!(p("x^(3/4) + x").level(), 2);
        assert_eq!(p("(x^(1/2) - 1)*(x^(1/2) + 1)"), p("x - 1"));
        assert_eq!(p("5").level(), 0);
        assert_eq!(p("x^(3/4) + 2*x - 1/2").to_string(), "2*x + x^(3/4) - 1/2");
        assert!("x^(1/3)".parse::<DyadicPuiseux>().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(DyadicPuiseux::gcd(&p("x - 1"), &p("x^(1/2) - 1")), p("x^(1/2) - 1"));
        assert_eq!(DyadicPuiseux::gcd(&p("2*x + 2"), &p("0")), p("x + 1"));
        assert_eq!(DyadicPuiseux::gcd(&p("x"), &p("x^(1/2)")), p("x^(1/2)"));
    }

    #[test]
    fn divides_examples() {
        assert!(DyadicPuiseux::divides(&p("x^(1/2)"), &p("x")));
        assert!(!DyadicPuiseux::divides(&p("x + 1"), &p("x^(1/2) + 1")));
        assert_eq!(
            DyadicPuiseux::div_exact(&p("x - 1"), &p("x^(1/2) + 1")),
            Some(p("x^(1/2) - 1"))
        );
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(p("x^(1/2)").contraction(), QPoly::x());
        assert_eq!(p("x^(1/2) - 1").contraction(), QPoly::from_i64(&[-1, 1]));
        // (x^(1/4) + 1) divides x - 1 but not x + 1
        assert_eq!(p("x^(1/4) + 1").contraction(), QPoly::from_i64(&[-1, 1]));
        assert_eq!(p("x^(1/2) + 2").contraction(), QPoly::from_i64(&[-4, 1]));
        assert_eq!(p("3").contraction(), QPoly::one());
    }

    #[test]
    fn model_round_trip_examples() {
        let a = ExtElement::from_reduced_parts(MonoidElement::single(1), QPoly::x());
        assert_eq!(PuiseuxOracle::to_model(&a), p("x^(1/2)"));
        assert_eq!(PuiseuxOracle::from_model(&p("x^(1/2)")), a);
        let r = ExtElement::from_reduced_parts(MonoidElement::single(0), QPoly::from_i64(&[1, 0, 3]));
        assert_eq!(PuiseuxOracle::to_model(&r), p("3*x^2 + 1"));
        assert_eq!(p("x^(1/2)").act(1), p("x"));
        assert_eq!(p("x").act(-2), p("x^(1/4)"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn puiseux() -> impl Strategy<Value = DyadicPuiseux> {
            (0u32..3, proptest::collection::vec(-4i64..=4, 0..5))
                .prop_map(|(n, v)| DyadicPuiseux::from_level(n, &QPoly::from_i64(&v)))
        }

        proptest! {
            #[test]
            fn bezout_witness((a, b) in (puiseux(), puiseux())) {
                prop_assume!(!a.is_zero() || !b.is_zero());
                let g = DyadicPuiseux::gcd(&a, &b);
                prop_assert!(DyadicPuiseux::divides(&g, &a));
                prop_assert!(DyadicPuiseux::divides(&g, &b));
                let (g2, u, v) = DyadicPuiseux::xgcd(&a, &b);
                prop_assert_eq!(&g2, &g);
                prop_assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
            }

            #[test]
            fn contraction_matches_preimage_ideal(a in puiseux()) {
                prop_assume!(!a.is_zero());
                let n = a.level();
                let ring = QPolyRing::squaring();
                let pre = ring.preimage_ideal(&MonoidElement::single(n), &[a.to_level(n)]).unwrap();
                prop_assert_eq!(vec![a.contraction()], pre);
            }

            #[test]
            fn action_is_multiplicative((a, b, g) in (puiseux(), puiseux(), -2i64..3)) {
                prop_assert_eq!(a.mul(&b).act(g), a.act(g).mul(&b.act(g)));
                prop_assert_eq!(a.act(g).act(-g), a);
            }
        }
    }
}
