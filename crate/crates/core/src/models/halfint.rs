//! `ℤ + ℤ[1/2][x]·x` inside `ℚ[x]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ext::{ExtElement, ModelAnswer, ModelOracle};
use crate::monoid::MonoidElement;
use crate::poly::zgroebner::{strong_basis, ZMPoly};
use crate::poly::{QPoly, ZPoly, ZPolyRing};

/// Degree cap for the saturation computation.
const SATURATION_CAP: usize = 64;

fn two_pow(n: u32) -> BigInt {
    BigInt::one() << n as usize
}

/// Exponent of two in a power-of-two denominator.
fn dyadic_valuation(c: &BigRational) -> Option<u32> {
    let d = c.denom();
    let bits = d.bits();
    (d.trailing_zeros() == Some(bits - 1)).then(|| (bits - 1) as u32)
}

/// Is `q ∈ ℤ + ℤ[1/2][x]·x`?
pub fn halfint_membership(q: &QPoly) -> bool {
    q.coeff(0).is_integer() && q.terms().all(|(_, c)| dyadic_valuation(c).is_some())
}

/// An element of `ℤ + ℤ[1/2][x]·x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HalfIntPoly(QPoly);

impl HalfIntPoly {
    pub fn new(q: QPoly) -> Option<Self> {
        halfint_membership(&q).then_some(HalfIntPoly(q))
    }

    pub fn as_qpoly(&self) -> &QPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        HalfIntPoly(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        HalfIntPoly(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        HalfIntPoly(self.0.mul(&other.0))
    }

    /// `f(x) ↦ f(2^g·x)`.
    pub fn act(&self, g: i64) -> Self {
        let c = if g >= 0 {
            BigRational::from_integer(two_pow(g as u32))
        } else {
            BigRational::new(BigInt::one(), two_pow(g.unsigned_abs() as u32))
        };
        HalfIntPoly(self.0.substitute_monomial(&c, 1))
    }

    /// `b / a` when the quotient lies in the model.
    pub fn div_exact(b: &Self, a: &Self) -> Option<Self> {
        assert!(!a.is_zero(), "division by zero");
        let (q, r) = b.0.div_rem(&a.0);
        if r.is_zero() {
            Self::new(q)
        } else {
            None
        }
    }

    pub fn divides(a: &Self, b: &Self) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        Self::div_exact(b, a).is_some()
    }

    /// The augmentation `f ↦ f(0) ∈ ℤ`.
    pub fn constant_term(&self) -> BigInt {
        self.0.coeff(0).to_integer()
    }
}

impl fmt::Display for HalfIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The isomorphism `A(ℤ[x]; x ↦ 2x) ≅ ℤ + ℤ[1/2][x]·x`, sending
/// `φ_s⁻¹(x)` to `x/2^s`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HalfIntOracle;

impl HalfIntOracle {
    pub fn to_model(a: &ExtElement<ZPoly>) -> HalfIntPoly {
        let s = a.denom().exponents()[0];
        let c = BigRational::new(BigInt::one(), two_pow(s));
        HalfIntPoly(a.num().to_qpoly().substitute_monomial(&c, 1))
    }

    /// The least `s` with `m(2^s·x) ∈ ℤ[x]` gives the reduced pair.
    pub fn from_model(m: &HalfIntPoly) -> ExtElement<ZPoly> {
        let s = m
            .0
            .terms()
            .filter(|(i, _)| *i > 0)
            .map(|(i, c)| {
                let v = dyadic_valuation(c).expect("model coefficients are dyadic");
                v.div_ceil(i as u32)
            })
            .max()
            .unwrap_or(0);
        let scaled = m
            .0
            .substitute_monomial(&BigRational::from_integer(two_pow(s)), 1);
        let num = ZPoly::from_qpoly(&scaled).expect("scaling clears dyadic denominators");
        ExtElement::from_reduced_parts(MonoidElement::single(s), num)
    }

    pub fn ring() -> ZPolyRing {
        ZPolyRing::doubling()
    }

    /// `A·M ∩ ℤ[x] = M + sat₂(x·M)` for `M ⊆ ℤ[x]`, where the saturation
    /// `{f : 2^k·f ∈ x·M}` is `⟨x·M, 2z - 1⟩ ∩ ℤ[x]`.
    pub fn closure(gens: &[ZPoly]) -> Option<Vec<ZPoly>> {
        let nonzero: Vec<&ZPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Some(Vec::new());
        }
        let mut polys: Vec<ZMPoly> = nonzero
            .iter()
            .map(|g| ZMPoly::from_univariate(2, 1, g.mul(&ZPoly::x()).coeffs()))
            .collect();
        polys.push(ZMPoly::from_terms(
            2,
            [(vec![1, 0], BigInt::from(2)), (vec![0, 0], -BigInt::one())],
        ));
        let basis = strong_basis(&polys, SATURATION_CAP).ok()?;
        let mut out: Vec<ZPoly> = nonzero.into_iter().cloned().collect();
        out.extend(
            basis
                .iter()
                .filter(|p| !p.involves(0))
                .map(|p| ZPoly::from_coeffs(p.to_univariate(1))),
        );
        Some(out)
    }
}

impl ModelOracle<ZPolyRing> for HalfIntOracle {
    fn name(&self) -> &'static str {
        "half-integer"
    }

    fn render(&self, a: &ExtElement<ZPoly>) -> String {
        Self::to_model(a).to_string()
    }

    fn member(&self, a: &ExtElement<ZPoly>, gens: &[ExtElement<ZPoly>]) -> Option<ModelAnswer> {
        let m = Self::to_model(a);
        let gs: Vec<HalfIntPoly> = gens
            .iter()
            .map(Self::to_model)
            .filter(|g| !g.is_zero())
            .collect();
        if gs.is_empty() {
            return Some(ModelAnswer {
                member: m.is_zero(),
                reason: "the ideal is zero".into(),
            });
        }
        // principal case: one generator divides all the others
        if let Some(g) = gs.iter().find(|g| gs.iter().all(|h| HalfIntPoly::divides(g, h))) {
            let member = HalfIntPoly::divides(g, &m);
            let reason = if member {
                format!("the ideal is generated by {g} and {m}/({g}) lies in ℤ + ℤ[1/2][x]x")
            } else {
                format!("the ideal is generated by {g} and {m}/({g}) is not in ℤ + ℤ[1/2][x]x")
            };
            return Some(ModelAnswer { member, reason });
        }
        let qgcd = QPoly::gcd_all(gs.iter().map(HalfIntPoly::as_qpoly));
        if !qgcd.divides(m.as_qpoly()) {
            return Some(ModelAnswer {
                member: false,
                reason: format!("even over ℚ[x] the generators' gcd {qgcd} does not divide {m}"),
            });
        }
        let eps = gs
            .iter()
            .fold(BigInt::zero(), |acc, g| acc.gcd(&g.constant_term()));
        let m0 = m.constant_term();
        let blocked = if eps.is_zero() {
            !m0.is_zero()
        } else {
            !m0.is_multiple_of(&eps)
        };
        if blocked {
            return Some(ModelAnswer {
                member: false,
                reason: format!("constant terms: {m0} is not in ({eps})"),
            });
        }
        None
    }

    fn contraction(&self, gens: &[ExtElement<ZPoly>]) -> Option<Vec<ZPoly>> {
        if gens.iter().any(|g| !g.in_base()) {
            return None;
        }
        let base: Vec<ZPoly> = gens.iter().map(|g| g.num().clone()).collect();
        Self::closure(&base)
    }

    fn principal_generator(&self, gens: &[ExtElement<ZPoly>]) -> Option<ExtElement<ZPoly>> {
        let gs: Vec<HalfIntPoly> = gens
            .iter()
            .map(Self::to_model)
            .filter(|g| !g.is_zero())
            .collect();
        if gs.is_empty() {
            return Some(ExtElement::from_reduced_parts(MonoidElement::single(0), ZPoly::zero()));
        }
        gs.iter()
            .find(|g| gs.iter().all(|h| HalfIntPoly::divides(g, h)))
            .map(Self::from_model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SRing;

    fn q(text: &str) -> QPoly {
        crate::poly::QPolyRing::squaring().parse_element(text).unwrap()
    }
    fn z(text: &str) -> ZPoly {
        ZPolyRing::doubling().parse_element(text).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(halfint_membership(&q("x/2")));
        assert!(!halfint_membership(&q("1/2")));
        assert!(halfint_membership(&q("5 + x/8")));
        assert!(!halfint_membership(&q("x/3")));
        for n in 0..=20u32 {
            let c = BigRational::new(BigInt::one(), two_pow(n));
            assert!(halfint_membership(&QPoly::monomial(c, 1)));
        }
    }

    #[test]
    fn model_round_trip_examples() {
        let a = ExtElement::from_reduced_parts(MonoidElement::single(1), ZPoly::x());
        assert_eq!(HalfIntOracle::to_model(&a).as_qpoly(), &q("x/2"));
        assert_eq!(HalfIntOracle::from_model(&HalfIntPoly::new(q("x/2")).unwrap()), a);
        let m = HalfIntPoly::new(q("3 + x/2 + x^2/8")).unwrap();
        let back = HalfIntOracle::from_model(&m);
        assert_eq!(back.denom(), &MonoidElement::single(2));
        assert_eq!(back.num(), &z("3 + 2*x + 2*x^2"));
        assert_eq!(HalfIntOracle::to_model(&back), m);
    }

    #[test]
    fn closure_examples() {
        let ring = ZPolyRing::doubling();
        let c = HalfIntOracle::closure(&[z("4*x")]).unwrap();
        assert!(ring.ideals_equal(&c, &[z("4*x"), z("x^2")]));
        let c = HalfIntOracle::closure(&[z("x")]).unwrap();
        assert!(ring.ideals_equal(&c, &[z("x")]));
        let c = HalfIntOracle::closure(&[z("2")]).unwrap();
        assert!(ring.ideals_equal(&c, &[z("2"), z("x")]));
    }

    #[test]
    fn oracle_membership() {
        let o = HalfIntOracle;
        let e = |t: &str| ExtElement::from_reduced_parts(MonoidElement::single(0), z(t));
        let half_x = ExtElement::from_reduced_parts(MonoidElement::single(1), ZPoly::x());
        // x ∈ A·(x/2) but x/2 ∉ A·x
        assert!(o.member(&e("x"), std::slice::from_ref(&half_x)).unwrap().member);
        assert!(!o.member(&half_x, &[e("x")]).unwrap().member);
        // 1 ∉ A·2 + A·x by constant terms
        assert!(!o.member(&e("1"), &[e("2"), e("x")]).unwrap().member);
        assert_eq!(o.principal_generator(&[e("2"), e("x")]), Some(e("2")));
    }
}
