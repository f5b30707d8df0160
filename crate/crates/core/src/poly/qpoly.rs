//! Dense univariate polynomials over exact rationals.
//!
//! `QPoly` stores coefficients in ascending degree order. The vector is empty
//! for the zero polynomial and its last entry is nonzero otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fmt_terms;
use crate::ring::RingElement;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn x() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly { coeffs: vec![c] }.trim()
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        QPoly { coeffs }.trim()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lc_inv;
            for (j, d) in divisor.terms() {
                let t = &q * d;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Greatest common divisor of the nonzero exponents, or `None` for a
    /// constant.
    pub fn exponent_gcd(&self) -> Option<usize> {
        self.terms()
            .map(|(e, _)| e)
            .filter(|&e| e > 0)
            .fold(None, |acc, e| Some(acc.map_or(e, |a: usize| a.gcd(&e))))
    }

    /// `g` with `self = g(x^e)`. Caller guarantees `e` divides every
    /// exponent.
    pub fn compress(&self, e: usize) -> Self {
        debug_assert!(e > 0);
        if e == 1 {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len().div_ceil(e)];
        for (i, c) in self.terms() {
            debug_assert_eq!(i % e, 0);
            out[i / e] = c.clone();
        }
        Self::from_coeffs(out)
    }

    /// `self(x^e)`.
    pub fn expand(&self, e: usize) -> Self {
        self.substitute_monomial(&rat(1), e)
    }

    /// `self(c·x^e)`.
    pub fn substitute_monomial(&self, c: &BigRational, e: usize) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut out = vec![BigRational::zero(); deg * e + 1];
        let mut cpow = rat(1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out[i * e] = a * &cpow;
            }
            cpow = &cpow * c;
        }
        Self::from_coeffs(out)
    }

    /// Splits into residue classes: `self = Σ_j x^j · parts[j](x^e)`.
    fn residue_parts(&self, e: usize) -> Vec<Self> {
        let mut parts = vec![Vec::new(); e];
        for (i, c) in self.terms() {
            let part = &mut parts[i % e];
            let k = i / e;
            if part.len() <= k {
                part.resize(k + 1, BigRational::zero());
            }
            part[k] = c.clone();
        }
        parts.into_iter().map(Self::from_coeffs).collect()
    }

    /// Does `self` divide `other` in `ℚ[x]`?
    ///
    /// When the divisor is a polynomial in `x^e`, the test runs on the
    /// residue classes of `other` modulo `e`, which keeps images of
    /// `x ↦ x^(2^n)` cheap.
    pub fn divides(&self, other: &Self) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let Some(e) = self.exponent_gcd() else {
            return true;
        };
        if e == 1 {
            return other.rem(self).is_zero();
        }
        let h = self.compress(e);
        other
            .residue_parts(e)
            .iter()
            .all(|part| part.is_zero() || part.rem(&h).is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        Self::gcd_all([self, other])
    }

    pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a QPoly>) -> Self {
        let polys: Vec<&QPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        if polys.is_empty() {
            return Self::zero();
        }
        // all inputs polynomials in x^e => so is the gcd
        let e = polys
            .iter()
            .filter_map(|p| p.exponent_gcd())
            .fold(0usize, |acc, e| acc.gcd(&e));
        let e = e.max(1);
        let mut g = polys[0].compress(e).monic();
        for p in &polys[1..] {
            if g.is_constant() {
                break;
            }
            g = euclid(g, p.compress(e));
        }
        g.expand(e)
    }

    /// Extended Euclid: `(g, u, v)` with `u·a + v·b = g`, `g` monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading_coeff().cloned() {
            None => (Self::zero(), Self::zero(), Self::zero()),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one().rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// The monic `H` of least degree with `H(z) ≡ 0 (mod m)`, found by
    /// searching for a linear dependency among `1, z, z², …` degree by
    /// degree. `m` must be nonzero.
    pub fn min_poly_mod(z: &Self, m: &Self) -> Self {
        let n = m.degree().expect("modulus must be nonzero");
        let to_vec = |p: &QPoly| -> Vec<BigRational> { (0..n).map(|i| p.coeff(i)).collect() };
        // rows: (pivot, reduced vector, combination over powers of z)
        let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let z = z.rem(m);
        let mut power = Self::one().rem(m);
        for j in 0..=n {
            let mut v = to_vec(&power);
            let mut combo = vec![BigRational::zero(); j + 1];
            combo[j] = rat(1);
            for (pivot, row, row_combo) in &rows {
                if v[*pivot].is_zero() {
                    continue;
                }
                let f = &v[*pivot] / &row[*pivot];
                for (vi, ri) in v.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        *vi -= &f * ri;
                    }
                }
                for (ci, rc) in combo.iter_mut().zip(row_combo) {
                    if !rc.is_zero() {
                        *ci -= &f * rc;
                    }
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return Self::from_coeffs(combo),
                Some(pivot) => rows.push((pivot, v, combo)),
            }
            power = power.mul(&z).rem(m);
        }
        unreachable!("n + 1 vectors in an n-dimensional space are dependent")
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Largest absolute value among numerators and denominators.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Renders with the given variable name.
    pub fn fmt_var(&self, var: &str) -> String {
        fmt_terms(self.terms().rev().map(|(e, c)| (c.clone(), mono(var, e))))
    }
}

fn mono(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn euclid(mut a: QPoly, mut b: QPoly) -> QPoly {
    while !b.is_zero() {
        let r = a.rem(&b).monic();
        a = b;
        b = r;
    }
    a.monic()
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl RingElement for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, 1]); // x + 1
        let b = p(&[-1, 1]); // x - 1
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.add(&b), p(&[0, 2]));
        assert_eq!(a.sub(&a), QPoly::zero());
        let c = QPoly::from_coeffs(vec![rat(1), q(-1, 2), rat(3)]);
        assert_eq!(c.to_string(), "3*x^2 - 1/2*x + 1");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[3, 0, 2, 5, 1]);
        let b = p(&[1, 2, 0, 3]);
        let (quot, r) = a.div_rem(&b);
        assert_eq!(quot.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 3);
    }

    #[test]
    fn gcd_examples() {
        let x2m1 = p(&[-1, 0, 1]);
        let xm1 = p(&[-1, 1]);
        assert_eq!(x2m1.gcd(&xm1), xm1);
        assert_eq!(p(&[0, 2]).gcd(&QPoly::zero()), p(&[0, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), QPoly::one());
        // compressed path: gcd(x^4 - 1, x^2 - 1) = x^2 - 1
        assert_eq!(p(&[-1, 0, 0, 0, 1]).gcd(&x2m1), x2m1);
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[1, 0, 1]);
        let (g, u, v) = QPoly::xgcd(&a, &b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn divides_with_compression() {
        // x^2 - 1 divides x^5 - x^3 = x^3 (x^2 - 1)
        assert!(p(&[-1, 0, 1]).divides(&p(&[0, 0, 0, -1, 0, 1])));
        assert!(!p(&[-1, 0, 1]).divides(&p(&[0, 1, 0, 1])));
        assert!(p(&[5]).divides(&p(&[1, 2])));
        assert!(!QPoly::zero().divides(&p(&[1])));
    }

    #[test]
    fn min_poly_examples() {
        // z = x^2 mod x^2 = 0 -> H = u
        let h = QPoly::min_poly_mod(&p(&[0, 0, 1]), &p(&[0, 0, 1]));
        assert_eq!(h, p(&[0, 1]));
        // z = x^2 mod (x - 1) = 1 -> H = u - 1
        let h = QPoly::min_poly_mod(&p(&[0, 0, 1]), &p(&[-1, 1]));
        assert_eq!(h, p(&[-1, 1]));
        // unit modulus -> H = 1
        let h = QPoly::min_poly_mod(&p(&[0, 1]), &p(&[3]));
        assert_eq!(h, QPoly::one());
    }

    #[test]
    fn substitution() {
        assert_eq!(p(&[0, 1, 0, 1]).expand(2), p(&[0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(
            p(&[1, 1, 1]).substitute_monomial(&rat(2), 1),
            p(&[1, 2, 4])
        );
        assert_eq!(p(&[0, 0, 1, 0, 0, 0, 1]).compress(2), p(&[0, 1, 0, 1]));
    }
}
