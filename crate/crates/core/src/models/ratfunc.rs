//! The field `D = ∪ₙ K(x^(1/2^n))`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::puiseux::DyadicPuiseux;
use crate::poly::QPoly;

/// A reduced fraction `num(y)/den(y)` with `y = x^(1/2^level)`, `den`
/// monic, and `level` minimal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyadicRatFunc {
    level: u32,
    num: QPoly,
    den: QPoly,
}

fn is_even_poly(p: &QPoly) -> bool {
    p.terms().all(|(e, _)| e % 2 == 0)
}

impl DyadicRatFunc {
    /// Reduces `num/den` at the given level. Panics on a zero denominator.
    pub fn new(level: u32, num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.div_rem(&g).0;
        let mut den = den.div_rem(&g).0;
        let lc = den.leading_coeff().expect("nonzero").recip();
        num = num.scale(&lc);
        den = den.scale(&lc);
        let mut level = level;
        while level > 0 && is_even_poly(&num) && is_even_poly(&den) {
            num = num.compress(2);
            den = den.compress(2);
            level -= 1;
        }
        DyadicRatFunc { level, num, den }
    }

    pub fn zero() -> Self {
        DyadicRatFunc {
            level: 0,
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(0, QPoly::constant(c), QPoly::one())
    }

    pub fn x() -> Self {
        Self::new(0, QPoly::x(), QPoly::one())
    }

    pub fn from_puiseux(p: &DyadicPuiseux) -> Self {
        let n = p.level();
        Self::new(n, p.to_level(n), QPoly::one())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Lies in `K(x)`.
    pub fn in_base_field(&self) -> bool {
        self.level == 0
    }

    pub fn numerator(&self) -> DyadicPuiseux {
        DyadicPuiseux::from_level(self.level, &self.num)
    }

    pub fn denominator(&self) -> DyadicPuiseux {
        DyadicPuiseux::from_level(self.level, &self.den)
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    fn at_level(&self, n: u32) -> (QPoly, QPoly) {
        let e = 1usize << (n - self.level);
        (self.num.expand(e), self.den.expand(e))
    }

    fn common(a: &Self, b: &Self) -> (u32, (QPoly, QPoly), (QPoly, QPoly)) {
        let n = a.level.max(b.level);
        (n, a.at_level(n), b.at_level(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (n, (an, ad), (bn, bd)) = Self::common(self, other);
        Self::new(n, an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
    }

    pub fn neg(&self) -> Self {
        DyadicRatFunc {
            level: self.level,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, (an, ad), (bn, bd)) = Self::common(self, other);
        Self::new(n, an.mul(&bn), ad.mul(&bd))
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.level, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// `σ^k` with `σ(x^q) = x^(2q)`, for `k ∈ ℤ`.
    pub fn sigma(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u32;
            if k <= self.level {
                DyadicRatFunc {
                    level: self.level - k,
                    num: self.num.clone(),
                    den: self.den.clone(),
                }
            } else {
                let e = 1usize << (k - self.level);
                // den stays monic under x ↦ x^e
                DyadicRatFunc {
                    level: 0,
                    num: self.num.expand(e),
                    den: self.den.expand(e),
                }
            }
        } else {
            Self::new(self.level + k.unsigned_abs() as u32, self.num.clone(), self.den.clone())
        }
    }
}

impl fmt::Display for DyadicRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator();
        if self.den == QPoly::one() {
            return write!(f, "{num}");
        }
        let wrap = |p: &DyadicPuiseux| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&num), wrap(&self.denominator()))
    }
}

impl From<BigInt> for DyadicRatFunc {
    fn from(n: BigInt) -> Self {
        Self::constant(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> DyadicRatFunc {
        DyadicRatFunc::from_puiseux(&text.parse().unwrap())
    }

    #[test]
    fn canonical_form() {
        let a = d("x - 1").div(&d("x^(1/2) - 1")).unwrap();
        assert_eq!(a, d("x^(1/2) + 1"));
        let b = d("x").div(&d("x^2 + 1")).unwrap();
        assert_eq!(b.level(), 0);
        assert_eq!(b.to_string(), "x/(x^2 + 1)");
        let c = d("x^(1/4)").mul(&d("x^(1/4)"));
        assert_eq!(c.level(), 1);
        assert!(d("x^(1/2)").sub(&d("x^(1/2)")).is_zero());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(d("x^(1/2)").sigma(1), d("x"));
        assert_eq!(d("x").sigma(1), d("x^2"));
        assert_eq!(d("x").sigma(-1), d("x^(1/2)"));
        let f = d("1").div(&d("x + 1")).unwrap();
        assert_eq!(f.sigma(1), d("1").div(&d("x^2 + 1")).unwrap());
        assert_eq!(f.sigma(-2).sigma(2), f);
        let g = d("x^2").sigma(-1);
        assert_eq!(g, d("x"));
    }
}
