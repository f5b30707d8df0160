//! Strong Gröbner bases over the integers.
//!
//! Polynomials live in `ℤ[x_0, …, x_{n-1}]` with the lexicographic order
//! `x_0 > x_1 > …`. A strong basis `G` of an ideal `I` has the property that
//! the leading term of every nonzero `f ∈ I` is divisible, coefficient and
//! monomial, by the leading term of some `g ∈ G`. It is obtained by adding
//! reduced S-polynomials (lcm of leading coefficients) and G-polynomials
//! (Bézout combination of leading coefficients) until every pair reduces
//! to zero.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{CoreError, Result};

pub type Monomial = Vec<u32>;

/// A sparse multivariate integer polynomial. The map is ordered so the last
/// entry is the leading term under lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ZMPoly {
    pub fn zero(nvars: usize) -> Self {
        ZMPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Univariate embedding: coefficient `i` becomes the term `x_var^i`.
    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            nvars,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut m = vec![0; nvars];
                m[var] = i as u32;
                (m, c.clone())
            }),
        )
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// `c · x^m · self`.
    pub fn mul_term(&self, m: &[u32], c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ZMPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn normalize_sign(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.mul_term(&vec![0; self.nvars], &BigInt::from(-1)),
            _ => self,
        }
    }

    /// Variables that occur with positive exponent.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    /// Coefficients in `x_var`, assuming no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Vec<BigInt> {
        let deg = self.terms.keys().map(|m| m[var]).max().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m[var] as usize] += c;
        }
        out
    }
}

fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Repeatedly cancels the leading term against a basis element whose
/// leading term divides it. Stops at zero or at an irreducible leading term.
pub fn top_reduce(mut f: ZMPoly, basis: &[ZMPoly]) -> ZMPoly {
    'outer: while let Some((lm, lc)) = f.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (gm, gc) = g.leading().expect("basis elements are nonzero");
            if mono_divides(gm, &lm) && lc.is_multiple_of(gc) {
                let q = &lc / gc;
                f = f.sub(&g.mul_term(&mono_div(&lm, gm), &q));
                continue 'outer;
            }
        }
        break;
    }
    f
}

/// Full reduction: irreducible leading terms move to the remainder and
/// reduction continues on the tail.
pub fn normal_form(mut f: ZMPoly, basis: &[ZMPoly]) -> ZMPoly {
    let mut rem = ZMPoly::zero(f.nvars);
    loop {
        f = top_reduce(f, basis);
        let Some((m, c)) = f.leading().map(|(m, c)| (m.clone(), c.clone())) else {
            return rem;
        };
        f.terms.remove(&m);
        rem.add_term(m, c);
    }
}

fn s_poly(f: &ZMPoly, g: &ZMPoly) -> ZMPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let m = mono_lcm(fm, gm);
    let l = fc.lcm(gc);
    f.mul_term(&mono_div(&m, fm), &(&l / fc))
        .sub(&g.mul_term(&mono_div(&m, gm), &(&l / gc)))
}

fn g_poly(f: &ZMPoly, g: &ZMPoly) -> ZMPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let m = mono_lcm(fm, gm);
    let eg = fc.extended_gcd(gc);
    f.mul_term(&mono_div(&m, fm), &eg.x)
        .add(&g.mul_term(&mono_div(&m, gm), &eg.y))
}

/// Computes a minimal strong Gröbner basis of the ideal generated by `gens`.
///
/// Fails with `DegreeBoundExceeded` if any intermediate basis element has
/// total degree above `degree_cap`.
pub fn strong_basis(gens: &[ZMPoly], degree_cap: usize) -> Result<Vec<ZMPoly>> {
    let mut basis: Vec<ZMPoly> = Vec::new();
    let mut pending: VecDeque<ZMPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();

    let push = |basis: &mut Vec<ZMPoly>, pairs: &mut VecDeque<(usize, usize)>, p: ZMPoly| -> Result<()> {
        if p.total_degree() as usize > degree_cap {
            return Err(CoreError::DegreeBoundExceeded { cap: degree_cap });
        }
        let idx = basis.len();
        basis.push(p.normalize_sign());
        for j in 0..idx {
            pairs.push_back((j, idx));
        }
        Ok(())
    };

    while let Some(g) = pending.pop_front() {
        if g.total_degree() as usize > degree_cap {
            return Err(CoreError::DegreeBoundExceeded { cap: degree_cap });
        }
        let r = top_reduce(g, &basis);
        if !r.is_zero() {
            push(&mut basis, &mut pairs, r)?;
        }
    }

    while let Some((i, j)) = pairs.pop_front() {
        let (f, g) = (&basis[i], &basis[j]);
        let (_, fc) = f.leading().unwrap();
        let (_, gc) = g.leading().unwrap();
        let needs_gpoly = !fc.is_multiple_of(gc) && !gc.is_multiple_of(fc);
        let mut new = vec![s_poly(f, g)];
        if needs_gpoly {
            new.push(g_poly(f, g));
        }
        for p in new {
            let r = top_reduce(p, &basis);
            if !r.is_zero() {
                push(&mut basis, &mut pairs, r)?;
            }
        }
    }
    Ok(minimize(basis))
}

/// Drops elements whose leading term is divisible by another's, then
/// tail-reduces the survivors.
fn minimize(mut basis: Vec<ZMPoly>) -> Vec<ZMPoly> {
    basis.sort_by(|a, b| {
        let (am, ac) = a.leading().unwrap();
        let (bm, bc) = b.leading().unwrap();
        am.cmp(bm).then(ac.abs().cmp(&bc.abs()))
    });
    let mut kept: Vec<ZMPoly> = Vec::new();
    for g in basis {
        let (gm, gc) = g.leading().unwrap();
        let redundant = kept.iter().any(|k| {
            let (km, kc) = k.leading().unwrap();
            mono_divides(km, gm) && gc.is_multiple_of(kc)
        });
        if !redundant {
            kept.retain(|k| {
                let (km, kc) = k.leading().unwrap();
                !(mono_divides(gm, km) && kc.is_multiple_of(gc))
            });
            kept.push(g);
        }
    }
    let snapshot = kept.clone();
    kept.into_iter()
        .enumerate()
        .map(|(i, g)| {
            let others: Vec<ZMPoly> = snapshot
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, o)| o.clone())
                .collect();
            let (lm, lc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let mut tail = g.clone();
            tail.terms.remove(&lm);
            let mut out = normal_form(tail, &others);
            out.add_term(lm, lc);
            out
        })
        .collect()
}

/// Ideal membership against a strong basis.
pub fn reduces_to_zero(f: &ZMPoly, basis: &[ZMPoly]) -> bool {
    top_reduce(f.clone(), basis).is_zero()
}
