use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, RngCore};

use super::qpoly::{rat, QPoly};
use super::zgroebner::{reduces_to_zero, strong_basis, ZMPoly};
use super::zpoly::ZPoly;
use crate::error::{CoreError, ParseError, Result};
use crate::ext::ModelOracle;
use crate::models::{HalfIntOracle, PuiseuxOracle};
use crate::monoid::MonoidElement;
use crate::parse::{evaluate, natural_exponent, Evaluator};
use crate::ring::{SRing, SRingDescriptor, Verdict};

/// Default total-degree cap for Gröbner computations over `ℤ`.
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// `σ^n(x) = C_n · x^(D_n)`.
#[derive(Clone, Debug)]
struct Iterate<T> {
    scale: T,
    degree: usize,
}

fn iterate<T: Clone + One + Pow<usize, Output = T> + std::ops::Mul<Output = T>>(
    c: &T,
    d: u32,
    n: u32,
) -> Iterate<T> {
    let mut scale = T::one();
    let mut degree = 1usize;
    for _ in 0..n {
        scale = scale * c.clone().pow(degree);
        degree = degree
            .checked_mul(d as usize)
            .expect("iterated action degree overflows");
    }
    Iterate { scale, degree }
}

fn steps(s: &MonoidElement) -> u32 {
    assert_eq!(s.rank(), 1, "polynomial rings carry a rank-one action");
    s.exponents()[0]
}

/// `ℚ[x]` with `σ(x) = c·x^d`.
#[derive(Clone, Debug)]
pub struct QPolyRing {
    c: BigRational,
    d: u32,
}

impl QPolyRing {
    pub fn new(c: BigRational, d: u32) -> Result<Self> {
        if c.is_zero() {
            return Err(CoreError::NonInjectiveAction("c = 0 sends x to 0".into()));
        }
        if d == 0 {
            return Err(CoreError::NonInjectiveAction("d = 0 sends x to a constant".into()));
        }
        Ok(QPolyRing { c, d })
    }

    pub fn squaring() -> Self {
        QPolyRing { c: rat(1), d: 2 }
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    fn iterate(&self, n: u32) -> Iterate<BigRational> {
        iterate(&self.c, self.d, n)
    }
}

struct QEval;

impl Evaluator for QEval {
    type Value = QPoly;

    fn number(&self, n: &BigInt) -> QPoly {
        QPoly::constant(BigRational::from_integer(n.clone()))
    }
    fn variable(&self, name: &str) -> Option<QPoly> {
        (name == "x").then(QPoly::x)
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.add(b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.sub(b)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.mul(b)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.neg()
    }
    fn div(&self, a: &QPoly, b: &QPoly) -> Result<QPoly, String> {
        match (b.is_constant(), b.leading_coeff()) {
            (true, Some(c)) => Ok(a.scale(&c.recip())),
            _ => Err("division is only allowed by nonzero constants".into()),
        }
    }
    fn pow(&self, a: &QPoly, e: &BigRational) -> Result<QPoly, String> {
        Ok(a.pow(natural_exponent(e)?))
    }
}

pub(crate) fn parse_qpoly(text: &str) -> Result<QPoly, ParseError> {
    evaluate(&QEval, text)
}

pub(crate) fn parse_zpoly(text: &str) -> Result<ZPoly, ParseError> {
    let q = parse_qpoly(text)?;
    ZPoly::from_qpoly(&q).ok_or_else(|| ParseError::new(0, format!("{q} has non-integer coefficients")))
}

impl SRing for QPolyRing {
    type Elem = QPoly;

    fn descriptor(&self) -> SRingDescriptor {
        SRingDescriptor {
            family: "QPoly".into(),
            rank: 1,
            action: vec![format!("c={},d={}", self.c, self.d)],
        }
    }

    fn variable(&self) -> QPoly {
        QPoly::x()
    }

    fn constant(&self, q: &BigRational) -> Option<QPoly> {
        Some(QPoly::constant(q.clone()))
    }

    fn constant_value(&self, r: &QPoly) -> Option<BigRational> {
        r.is_constant().then(|| r.coeff(0))
    }

    fn act(&self, s: &MonoidElement, r: &QPoly) -> QPoly {
        let n = steps(s);
        if n == 0 {
            return r.clone();
        }
        let it = self.iterate(n);
        r.substitute_monomial(&it.scale, it.degree)
    }

    fn preimage(&self, s: &MonoidElement, r: &QPoly) -> Option<QPoly> {
        let n = steps(s);
        if n == 0 || r.is_constant() {
            return Some(r.clone());
        }
        let it = self.iterate(n);
        if r.terms().any(|(e, _)| e % it.degree != 0) {
            return None;
        }
        let inv = it.scale.recip();
        let compressed = r.compress(it.degree);
        let mut scale = rat(1);
        let coeffs = compressed
            .coeffs()
            .iter()
            .map(|a| {
                let out = a * &scale;
                scale = &scale * &inv;
                out
            })
            .collect();
        Some(QPoly::from_coeffs(coeffs))
    }

    fn ideal_membership(&self, r: &QPoly, gens: &[QPoly]) -> Verdict {
        let g = QPoly::gcd_all(gens);
        if g.divides(r) {
            Verdict::member(MonoidElement::identity(1), format!("gcd {g} divides {r}"))
        } else {
            Verdict::non_member(format!("gcd {g} does not divide {r}"))
        }
    }

    fn preimage_ideal(&self, s: &MonoidElement, gens: &[QPoly]) -> Result<Vec<QPoly>> {
        let g = QPoly::gcd_all(gens);
        if g.is_zero() {
            return Ok(Vec::new());
        }
        let n = steps(s);
        if n == 0 || g.is_constant() {
            return Ok(vec![g]);
        }
        let it = self.iterate(n);
        // σ^n(f) = f(C·x^D); work in ℚ[w]/(g'(w)) with w = x^e
        let e = g.exponent_gcd().unwrap_or(1).gcd(&it.degree);
        let modulus = g.compress(e);
        let z = QPoly::monomial(it.scale.clone(), it.degree / e);
        Ok(vec![QPoly::min_poly_mod(&z, &modulus)])
    }

    fn ideal_basis(&self, gens: &[QPoly]) -> Vec<QPoly> {
        let g = QPoly::gcd_all(gens);
        if g.is_zero() {
            Vec::new()
        } else {
            vec![g]
        }
    }

    fn invariant_obstruction(&self, r: &QPoly, gens: &[QPoly]) -> Option<String> {
        // f ↦ f(0) commutes with every σ^n
        let zero = BigRational::zero();
        (gens.iter().all(|g| g.eval(&zero).is_zero()) && !r.eval(&zero).is_zero()).then(|| {
            format!(
                "evaluation at 0 is action-invariant: every generator vanishes at 0 but {r} does not"
            )
        })
    }

    fn parse_element(&self, text: &str) -> Result<QPoly, ParseError> {
        parse_qpoly(text)
    }

    fn degree(&self, r: &QPoly) -> Option<usize> {
        r.degree()
    }

    fn sample_element(&self, rng: &mut dyn RngCore, max_degree: usize, height: i64) -> QPoly {
        let deg = rng.random_range(0..=max_degree);
        QPoly::from_coeffs(
            (0..=deg)
                .map(|_| {
                    let num = rng.random_range(-height..=height);
                    let den = if rng.random_bool(0.2) { rng.random_range(2..=3) } else { 1 };
                    BigRational::new(num.into(), BigInt::from(den))
                })
                .collect(),
        )
    }

    fn registered_model(&self) -> Option<Arc<dyn ModelOracle<Self>>> {
        (self.c.is_one() && self.d == 2).then(|| Arc::new(PuiseuxOracle) as Arc<dyn ModelOracle<Self>>)
    }
}

/// `ℤ[x]` with `σ(x) = c·x^d`.
#[derive(Clone, Debug)]
pub struct ZPolyRing {
    c: BigInt,
    d: u32,
    degree_cap: usize,
}

impl ZPolyRing {
    pub fn new(c: BigInt, d: u32) -> Result<Self> {
        if c.is_zero() {
            return Err(CoreError::NonInjectiveAction("c = 0 sends x to 0".into()));
        }
        if d == 0 {
            return Err(CoreError::NonInjectiveAction("d = 0 sends x to a constant".into()));
        }
        Ok(ZPolyRing {
            c,
            d,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    /// `σ(x) = 2x`.
    pub fn doubling() -> Self {
        ZPolyRing {
            c: BigInt::from(2),
            d: 1,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    fn iterate(&self, n: u32) -> Iterate<BigInt> {
        iterate(&self.c, self.d, n)
    }

    fn strong_basis(&self, gens: &[ZPoly]) -> Vec<ZMPoly> {
        let polys: Vec<ZMPoly> = gens
            .iter()
            .map(|g| ZMPoly::from_univariate(1, 0, g.coeffs()))
            .collect();
        // univariate bases never need more degree than the inputs
        let cap = gens.iter().filter_map(ZPoly::degree).max().unwrap_or(0);
        strong_basis(&polys, cap).expect("univariate strong basis stays within input degree")
    }
}

impl SRing for ZPolyRing {
    type Elem = ZPoly;

    fn descriptor(&self) -> SRingDescriptor {
        SRingDescriptor {
            family: "ZPoly".into(),
            rank: 1,
            action: vec![format!("c={},d={}", self.c, self.d)],
        }
    }

    fn variable(&self) -> ZPoly {
        ZPoly::x()
    }

    fn constant(&self, q: &BigRational) -> Option<ZPoly> {
        q.is_integer().then(|| ZPoly::constant(q.to_integer()))
    }

    fn constant_value(&self, r: &ZPoly) -> Option<BigRational> {
        matches!(r.degree(), None | Some(0)).then(|| BigRational::from_integer(r.constant_term()))
    }

    fn act(&self, s: &MonoidElement, r: &ZPoly) -> ZPoly {
        let n = steps(s);
        if n == 0 {
            return r.clone();
        }
        let it = self.iterate(n);
        r.substitute_monomial(&it.scale, it.degree)
    }

    fn preimage(&self, s: &MonoidElement, r: &ZPoly) -> Option<ZPoly> {
        let n = steps(s);
        if n == 0 {
            return Some(r.clone());
        }
        let it = self.iterate(n);
        let deg = match r.degree() {
            None => return Some(ZPoly::zero()),
            Some(d) => d,
        };
        let mut out = vec![BigInt::zero(); deg / it.degree + 1];
        let mut scale = BigInt::one();
        for (i, slot) in out.iter_mut().enumerate() {
            let a = r.coeff(i * it.degree);
            let (q, rem) = a.div_rem(&scale);
            if !rem.is_zero() {
                return None;
            }
            *slot = q;
            scale *= &it.scale;
        }
        if r.terms().any(|(e, _)| e % it.degree != 0) {
            return None;
        }
        Some(ZPoly::from_coeffs(out))
    }

    fn ideal_membership(&self, r: &ZPoly, gens: &[ZPoly]) -> Verdict {
        if r.is_zero() {
            return Verdict::member(MonoidElement::identity(1), "zero lies in every ideal");
        }
        let basis = self.strong_basis(gens);
        let f = ZMPoly::from_univariate(1, 0, r.coeffs());
        if reduces_to_zero(&f, &basis) {
            Verdict::member(
                MonoidElement::identity(1),
                format!("{r} reduces to 0 modulo a strong Gröbner basis"),
            )
        } else {
            Verdict::non_member(format!(
                "{r} has a nonzero strong normal form modulo the ideal"
            ))
        }
    }

    fn preimage_ideal(&self, s: &MonoidElement, gens: &[ZPoly]) -> Result<Vec<ZPoly>> {
        let n = steps(s);
        if n == 0 {
            return Ok(self.ideal_basis(gens));
        }
        if gens.iter().all(ZPoly::is_zero) {
            return Ok(Vec::new());
        }
        let it = self.iterate(n);
        // eliminate x from (gens(x), y - C·x^D) under lex x > y
        let mut polys: Vec<ZMPoly> = gens
            .iter()
            .map(|g| ZMPoly::from_univariate(2, 0, g.coeffs()))
            .collect();
        let link = ZMPoly::from_terms(
            2,
            [
                (vec![0, 1], BigInt::one()),
                (vec![it.degree as u32, 0], -it.scale.clone()),
            ],
        );
        polys.push(link);
        let basis = strong_basis(&polys, self.degree_cap)?;
        Ok(basis
            .iter()
            .filter(|p| !p.involves(0))
            .map(|p| ZPoly::from_coeffs(p.to_univariate(1)))
            .collect())
    }

    fn ideal_basis(&self, gens: &[ZPoly]) -> Vec<ZPoly> {
        self.strong_basis(gens)
            .iter()
            .map(|p| ZPoly::from_coeffs(p.to_univariate(0)))
            .collect()
    }

    fn invariant_obstruction(&self, r: &ZPoly, gens: &[ZPoly]) -> Option<String> {
        // f ↦ f(0) ∈ ℤ commutes with every σ^n
        let g = gens
            .iter()
            .fold(BigInt::zero(), |acc, p| acc.gcd(&p.constant_term()));
        let r0 = r.constant_term();
        let blocked = if g.is_zero() {
            !r0.is_zero()
        } else {
            !r0.is_multiple_of(&g)
        };
        blocked.then(|| {
            format!("evaluation at 0 is action-invariant: {r0} is not in the ideal ({g}) of ℤ")
        })
    }

    fn parse_element(&self, text: &str) -> Result<ZPoly, ParseError> {
        parse_zpoly(text)
    }

    fn degree(&self, r: &ZPoly) -> Option<usize> {
        r.degree()
    }

    fn sample_element(&self, rng: &mut dyn RngCore, max_degree: usize, height: i64) -> ZPoly {
        let deg = rng.random_range(0..=max_degree);
        ZPoly::from_coeffs((0..=deg).map(|_| rng.random_range(-height..=height).into()).collect())
    }

    fn registered_model(&self) -> Option<Arc<dyn ModelOracle<Self>>> {
        (self.c == BigInt::from(2) && self.d == 1)
            .then(|| Arc::new(HalfIntOracle) as Arc<dyn ModelOracle<Self>>)
    }
}

/// Either shipped ring, selected from text such as `QPoly{c=1,d=2}`.
#[derive(Clone, Debug)]
pub enum AnyRing {
    Q(QPolyRing),
    Z(ZPolyRing),
}

impl std::str::FromStr for AnyRing {
    type Err = CoreError;

    /// Accepts `QPoly{c=1,d=2}`, `QPoly{1,2}`, `ZPoly{c=2,d=1}`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || CoreError::UnknownRing(text.to_string());
        let t = text.trim();
        let open = t.find('{').ok_or_else(bad)?;
        let body = t[open + 1..].strip_suffix('}').ok_or_else(bad)?;
        let family = &t[..open];
        let mut c = None;
        let mut d = None;
        for (i, part) in body.split(',').enumerate() {
            let part = part.trim();
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (if i == 0 { "c" } else { "d" }, part),
            };
            match key {
                "c" => c = Some(value.to_string()),
                "d" => d = Some(value.parse::<u32>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let c = c.ok_or_else(bad)?;
        let d = d.ok_or_else(bad)?;
        match family {
            "QPoly" => {
                let q = parse_qpoly(&c).map_err(|_| bad())?;
                if !q.is_constant() {
                    return Err(bad());
                }
                Ok(AnyRing::Q(QPolyRing::new(q.coeff(0), d)?))
            }
            "ZPoly" => {
                let c: BigInt = c.parse().map_err(|_| bad())?;
                Ok(AnyRing::Z(ZPolyRing::new(c, d)?))
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for AnyRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyRing::Q(r) => write!(f, "QPoly{{c={},d={}}}", r.c, r.d),
            AnyRing::Z(r) => write!(f, "ZPoly{{c={},d={}}}", r.c, r.d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32) -> MonoidElement {
        MonoidElement::single(n)
    }
    fn qp(text: &str) -> QPoly {
        parse_qpoly(text).unwrap()
    }
    fn zp(text: &str) -> ZPoly {
        parse_zpoly(text).unwrap()
    }

    #[test]
    fn rejects_non_injective_parameters() {
        assert!(QPolyRing::new(rat(0), 2).is_err());
        assert!(ZPolyRing::new(BigInt::from(3), 0).is_err());
        assert!("QPoly{c=0,d=1}".parse::<AnyRing>().is_err());
    }

    #[test]
    fn ring_strings() {
        assert!(matches!("QPoly{c=1,d=2}".parse::<AnyRing>(), Ok(AnyRing::Q(_))));
        assert!(matches!("QPoly{1,2}".parse::<AnyRing>(), Ok(AnyRing::Q(_))));
        assert!(matches!("ZPoly{c=2,d=1}".parse::<AnyRing>(), Ok(AnyRing::Z(_))));
        assert!("RPoly{1,2}".parse::<AnyRing>().is_err());
        let r: AnyRing = "QPoly{1/2, 3}".parse().unwrap();
        assert_eq!(r.to_string(), "QPoly{c=1/2,d=3}");
    }

    #[test]
    fn act_examples() {
        let sq = QPolyRing::squaring();
        assert_eq!(sq.act(&s(1), &qp("x + 1")), qp("x^2 + 1"));
        assert_eq!(sq.act(&s(1), &qp("x^3 + x")), qp("x^6 + x^2"));
        assert_eq!(sq.act(&s(2), &qp("x")), qp("x^4"));
        assert_eq!(sq.act(&s(0), &qp("x^3 - 2")), qp("x^3 - 2"));
        let dbl = ZPolyRing::doubling();
        // σ²(x²) = (4x)² computed by substituting twice
        let once = zp("x^2").substitute_monomial(&BigInt::from(2), 1);
        let twice = once.substitute_monomial(&BigInt::from(2), 1);
        assert_eq!(twice, zp("16*x^2"));
        assert_eq!(dbl.act(&s(2), &zp("x^2")), twice);
        assert_eq!(dbl.act(&s(1), &zp("x^2 + x + 1")), zp("4*x^2 + 2*x + 1"));
    }

    #[test]
    fn preimage_examples() {
        let sq = QPolyRing::squaring();
        let pre = sq.preimage(&s(1), &qp("x^4 + 2*x^2")).unwrap();
        assert_eq!(pre, qp("x^2 + 2*x"));
        assert_eq!(sq.act(&s(1), &pre), qp("x^4 + 2*x^2"));
        assert_eq!(sq.preimage(&s(1), &qp("x^6 + x^2")), Some(qp("x^3 + x")));
        assert_eq!(sq.preimage(&s(1), &qp("x")), None);

        let dbl = ZPolyRing::doubling();
        assert_eq!(dbl.preimage(&s(1), &zp("2*x")), Some(zp("x")));
        assert_eq!(dbl.preimage(&s(1), &zp("x")), None);
        let pre = dbl.preimage(&s(1), &zp("2*x + 4*x^2")).unwrap();
        assert_eq!(pre, zp("x + x^2"));
        assert_eq!(dbl.act(&s(1), &pre), zp("2*x + 4*x^2"));
        assert_eq!(dbl.preimage(&s(2), &zp("4*x + 3")), Some(zp("x + 3")));
    }

    #[test]
    fn membership_examples() {
        let sq = QPolyRing::squaring();
        assert!(sq.ideal_membership(&qp("x^2 + x"), &[qp("x")]).is_member());
        assert!(sq.ideal_membership(&qp("1"), &[qp("x")]).is_non_member());
        let dbl = ZPolyRing::doubling();
        let gens = [zp("4*x"), zp("2*x^2")];
        assert!(dbl.ideal_membership(&zp("2*x"), &gens).is_non_member());
        assert!(dbl.ideal_membership(&zp("4*x + 2*x^3"), &gens).is_member());
    }

    /// Brute-force search over `a·4x + b·2x²` with bounded multipliers.
    #[test]
    fn zpoly_membership_against_brute_force() {
        let dbl = ZPolyRing::doubling();
        let gens = [zp("4*x"), zp("2*x^2")];
        let range = -3i64..=3;
        let mut combos = std::collections::HashSet::new();
        for a0 in range.clone() {
            for a1 in range.clone() {
                for b0 in range.clone() {
                    for b1 in range.clone() {
                        let a = ZPoly::from_i64(&[a0, a1]);
                        let b = ZPoly::from_i64(&[b0, b1]);
                        combos.insert(a.mul(&gens[0]).add(&b.mul(&gens[1])));
                    }
                }
            }
        }
        // every combination is a member
        for c in combos.iter().take(200) {
            assert!(dbl.ideal_membership(c, &gens).is_member(), "{c}");
        }
        // small polynomials outside the combination set: brute force agrees
        for c0 in -2i64..=2 {
            for c1 in -4i64..=4 {
                for c2 in -2i64..=2 {
                    let f = ZPoly::from_i64(&[c0, c1, c2]);
                    let brute = combos.contains(&f);
                    let member = dbl.ideal_membership(&f, &gens).is_member();
                    // degree ≤ 2 members need multipliers of degree ≤ 1 only
                    assert_eq!(member, brute, "{f}");
                }
            }
        }
    }

    #[test]
    fn qpoly_preimage_ideal_examples() {
        let sq = QPolyRing::squaring();
        assert_eq!(sq.preimage_ideal(&s(1), &[qp("x^2")]).unwrap(), vec![qp("x")]);
        assert_eq!(sq.preimage_ideal(&s(1), &[qp("x - 1")]).unwrap(), vec![qp("x - 1")]);
        assert_eq!(
            sq.preimage_ideal(&s(0), &[qp("x^2 - 1"), qp("x - 1")]).unwrap(),
            vec![qp("x - 1")]
        );
        assert!(sq.preimage_ideal(&s(2), &[qp("0")]).unwrap().is_empty());
    }

    /// Brute force over monomials and small binomials: `f(x²) ∈ (g)` exactly
    /// when `f` lies in the returned ideal.
    #[test]
    fn qpoly_preimage_ideal_brute_force() {
        let sq = QPolyRing::squaring();
        for g in ["x^2", "x - 1", "x^2 + 1", "x^3 - x", "x^4 - 2*x^2 + 1"] {
            let g = qp(g);
            let pre = sq.preimage_ideal(&s(1), std::slice::from_ref(&g)).unwrap();
            for deg in 0..=6usize {
                for shift in -2i64..=2 {
                    let f = QPoly::monomial(rat(1), deg).add(&QPoly::constant(rat(shift)));
                    let direct = g.divides(&sq.act(&s(1), &f));
                    let via = sq.ideal_membership(&f, &pre).is_member();
                    assert_eq!(direct, via, "g = {g}, f = {f}");
                }
            }
        }
    }

    #[test]
    fn zpoly_preimage_ideal() {
        let dbl = ZPolyRing::doubling();
        // { f : f(2x) ∈ (4x) } = (2x, x²)
        let pre = dbl.preimage_ideal(&s(1), &[zp("4*x")]).unwrap();
        assert!(dbl.ideals_equal(&pre, &[zp("2*x"), zp("x^2")]));
        for g in &pre {
            assert!(dbl
                .ideal_membership(&dbl.act(&s(1), g), &[zp("4*x")])
                .is_member());
        }
        assert_eq!(dbl.preimage_ideal(&s(0), &[zp("2"), zp("x")]).unwrap().len(), 2);
    }

    #[test]
    fn zpoly_degree_cap_surfaces() {
        let ring = ZPolyRing::new(BigInt::from(1), 2).unwrap().with_degree_cap(4);
        let err = ring.preimage_ideal(&s(3), &[zp("x - 1")]).unwrap_err();
        assert_eq!(err, CoreError::DegreeBoundExceeded { cap: 4 });
    }

    #[test]
    fn obstruction_at_zero() {
        let sq = QPolyRing::squaring();
        assert!(sq.invariant_obstruction(&qp("1"), &[qp("x")]).is_some());
        assert!(sq.invariant_obstruction(&qp("x"), &[qp("x + 1")]).is_none());
        let dbl = ZPolyRing::doubling();
        assert!(dbl.invariant_obstruction(&zp("1"), &[zp("2"), zp("x")]).is_some());
        assert!(dbl.invariant_obstruction(&zp("4 + x"), &[zp("2"), zp("x")]).is_none());
    }

    #[test]
    fn regular_elements() {
        assert!(QPolyRing::squaring().is_regular(&qp("x + 1")));
        assert!(!ZPolyRing::doubling().is_regular(&ZPoly::zero()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn qpoly() -> impl Strategy<Value = QPoly> {
            proptest::collection::vec(-6i64..=6, 0..5).prop_map(|v| QPoly::from_i64(&v))
        }
        fn zpoly() -> impl Strategy<Value = ZPoly> {
            proptest::collection::vec(-6i64..=6, 0..5).prop_map(|v| ZPoly::from_i64(&v))
        }

        proptest! {
            #[test]
            fn qpoly_act_is_a_unital_homomorphism((a, b, n) in (qpoly(), qpoly(), 0u32..4)) {
                let ring = QPolyRing::new(rat(3), 2).unwrap();
                let s = MonoidElement::single(n);
                prop_assert_eq!(ring.act(&s, &a.add(&b)), ring.act(&s, &a).add(&ring.act(&s, &b)));
                prop_assert_eq!(ring.act(&s, &a.mul(&b)), ring.act(&s, &a).mul(&ring.act(&s, &b)));
                prop_assert_eq!(ring.act(&s, &QPoly::one()), QPoly::one());
                prop_assert_eq!(ring.preimage(&s, &ring.act(&s, &a)), Some(a));
            }

            #[test]
            fn zpoly_act_is_a_unital_homomorphism((a, b, n) in (zpoly(), zpoly(), 0u32..4)) {
                let ring = ZPolyRing::doubling();
                let s = MonoidElement::single(n);
                prop_assert_eq!(ring.act(&s, &a.add(&b)), ring.act(&s, &a).add(&ring.act(&s, &b)));
                prop_assert_eq!(ring.act(&s, &a.mul(&b)), ring.act(&s, &a).mul(&ring.act(&s, &b)));
                prop_assert_eq!(ring.preimage(&s, &ring.act(&s, &a)), Some(a));
            }

            #[test]
            fn act_composes((a, m, n) in (zpoly(), 0u32..3, 0u32..3)) {
                let ring = ZPolyRing::new(BigInt::from(-3), 2).unwrap();
                let lhs = ring.act(&MonoidElement::single(m), &ring.act(&MonoidElement::single(n), &a));
                prop_assert_eq!(lhs, ring.act(&MonoidElement::single(m + n), &a));
            }

            #[test]
            fn membership_monotone_in_generators((r, g1, g2) in (zpoly(), zpoly(), zpoly())) {
                let ring = ZPolyRing::doubling();
                if ring.ideal_membership(&r, std::slice::from_ref(&g1)).is_member() {
                    prop_assert!(ring.ideal_membership(&r, &[g1, g2]).is_member());
                }
            }

            #[test]
            fn zpoly_products_are_members((a, b, g1, g2) in (zpoly(), zpoly(), zpoly(), zpoly())) {
                let ring = ZPolyRing::doubling();
                let f = a.mul(&g1).add(&b.mul(&g2));
                prop_assert!(ring.ideal_membership(&f, &[g1, g2]).is_member());
            }

            #[test]
            fn preimage_ideal_generators_are_preimages((g, n) in (zpoly(), 1u32..3)) {
                let ring = ZPolyRing::doubling();
                let s = MonoidElement::single(n);
                if let Ok(pre) = ring.preimage_ideal(&s, std::slice::from_ref(&g)) {
                    for f in pre {
                        prop_assert!(ring.ideal_membership(&ring.act(&s, &f), std::slice::from_ref(&g)).is_member());
                    }
                }
            }
        }
    }
}
