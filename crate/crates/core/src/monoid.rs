//! The acting monoid `S = ℕ^k` and its group of quotients `ℤ^k`.
//!
//! Composition is componentwise addition, so the monoid is commutative and
//! cancellative, and the Ore pair of two elements is given by the
//! componentwise maximum.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// An element of the free commutative monoid `ℕ^k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MonoidElement(Vec<u32>);

impl MonoidElement {
    pub fn new(exponents: Vec<u32>) -> Self {
        MonoidElement(exponents)
    }

    /// The identity of `ℕ^k`.
    pub fn identity(rank: usize) -> Self {
        MonoidElement(vec![0; rank])
    }

    /// Shorthand for rank-one elements.
    pub fn single(n: u32) -> Self {
        MonoidElement(vec![n])
    }

    /// The `i`-th generator of `ℕ^k`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        MonoidElement(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "monoid rank mismatch");
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Returns `(t1, t2)` with `t1 ∘ s1 = t2 ∘ s2 = max(s1, s2)`.
    ///
    /// The common value is the least common multiple in the divisibility
    /// order, so every other solution is a multiple of it.
    pub fn ore_pair(&self, other: &Self) -> (Self, Self) {
        let common = self.lcm(other);
        let t1 = common.divide_exact(self).expect("lcm is a multiple");
        let t2 = common.divide_exact(other).expect("lcm is a multiple");
        (t1, t2)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "monoid rank mismatch");
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Returns `u` with `u ∘ t = self`, if `t` divides `self`.
    pub fn divide_exact(&self, t: &Self) -> Option<Self> {
        assert_eq!(self.rank(), t.rank(), "monoid rank mismatch");
        self.0
            .iter()
            .zip(&t.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MonoidElement)
    }

    /// Truncated difference `max(self - t, 0)` componentwise.
    pub fn saturating_sub(&self, t: &Self) -> Self {
        MonoidElement(self.0.iter().zip(&t.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Divisibility order: `self ≤ other` iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All elements `s ≤ self`, smallest total degree first, ties broken
    /// lexicographically. Search loops rely on this order so that the first
    /// witness found is the smallest one.
    pub fn below(&self) -> Vec<MonoidElement> {
        let mut out = vec![MonoidElement(Vec::with_capacity(self.rank()))];
        for &cap in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=cap).map(move |e| {
                        let mut v = prefix.0.clone();
                        v.push(e);
                        MonoidElement(v)
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| match a.total_degree().cmp(&b.total_degree()) {
            Ordering::Equal => a.0.cmp(&b.0),
            other => other,
        });
        out
    }

    pub fn to_group(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|&e| i64::from(e)).collect())
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MonoidElement {
    type Err = ParseError;

    /// Parses `"3"`, `"1,2"` or `"s=1,2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body.strip_prefix("s=").unwrap_or(body);
        body.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| ParseError::new(0, format!("bad monoid exponent {p:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MonoidElement)
    }
}

/// An element of the group of quotients `ℤ^k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(exponents: Vec<i64>) -> Self {
        GroupElement(exponents)
    }

    pub fn single(n: i64) -> Self {
        GroupElement(vec![n])
    }

    pub fn identity(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "group rank mismatch");
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }

    /// Splits `g` as `s - t` with `s, t ∈ S` of disjoint support.
    pub fn split(&self) -> (MonoidElement, MonoidElement) {
        let pos = self.0.iter().map(|&a| a.max(0) as u32).collect();
        let neg = self.0.iter().map(|&a| (-a).max(0) as u32).collect();
        (MonoidElement(pos), MonoidElement(neg))
    }
}

impl From<&MonoidElement> for GroupElement {
    fn from(s: &MonoidElement) -> Self {
        s.to_group()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> MonoidElement {
        MonoidElement::new(v.to_vec())
    }

    #[test]
    fn compose_examples() {
        assert_eq!(m(&[2]).compose(&m(&[3])), m(&[5]));
        assert_eq!(m(&[0]).compose(&m(&[7])), m(&[7]));
        assert_eq!(m(&[1, 2]).compose(&m(&[3, 0])), m(&[4, 2]));
    }

    #[test]
    fn ore_pair_examples() {
        let (t1, t2) = m(&[3]).ore_pair(&m(&[5]));
        assert_eq!((t1.clone(), t2.clone()), (m(&[2]), m(&[0])));
        assert_eq!(t1.compose(&m(&[3])), m(&[5]));

        let (t1, t2) = m(&[4]).ore_pair(&m(&[4]));
        assert_eq!((t1, t2), (m(&[0]), m(&[0])));

        let (t1, t2) = m(&[1, 4]).ore_pair(&m(&[3, 2]));
        assert_eq!((t1.clone(), t2.clone()), (m(&[2, 0]), m(&[0, 2])));
        assert_eq!(t1.compose(&m(&[1, 4])), m(&[3, 4]));
        assert_eq!(t2.compose(&m(&[3, 2])), m(&[3, 4]));
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(m(&[5]).divide_exact(&m(&[2])), Some(m(&[3])));
        assert_eq!(m(&[1]).divide_exact(&m(&[2])), None);
        assert_eq!(m(&[2, 2]).divide_exact(&m(&[2, 2])), Some(m(&[0, 0])));
    }

    #[test]
    fn below_orders_by_total_degree() {
        let all = m(&[1, 2]).below();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], m(&[0, 0]));
        assert_eq!(all[1], m(&[0, 1]));
        assert_eq!(all[2], m(&[1, 0]));
        assert_eq!(all.last().unwrap(), &m(&[1, 2]));
        assert_eq!(m(&[3]).below(), vec![m(&[0]), m(&[1]), m(&[2]), m(&[3])]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("s=3".parse::<MonoidElement>().unwrap(), m(&[3]));
        assert_eq!("1,2".parse::<MonoidElement>().unwrap(), m(&[1, 2]));
        assert!("a".parse::<MonoidElement>().is_err());
        assert_eq!(m(&[1, 2]).to_string(), "1,2");
    }

    #[test]
    fn group_split() {
        let g = GroupElement::new(vec![3, -2, 0]);
        let (s, t) = g.split();
        assert_eq!(s, m(&[3, 0, 0]));
        assert_eq!(t, m(&[0, 2, 0]));
        assert_eq!(g.add(&g.neg()), GroupElement::identity(3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(k: usize) -> impl Strategy<Value = MonoidElement> {
            proptest::collection::vec(0u32..50, k).prop_map(MonoidElement::new)
        }

        proptest! {
            #[test]
            fn commutative((a, b) in (elem(3), elem(3))) {
                prop_assert_eq!(a.compose(&b), b.compose(&a));
            }

            #[test]
            fn ore_pair_is_minimal((a, b, u) in (elem(2), elem(2), elem(2))) {
                let (t1, t2) = a.ore_pair(&b);
                let common = t1.compose(&a);
                prop_assert_eq!(&common, &t2.compose(&b));
                // any common multiple u∘a that is also a multiple of b lies above it
                let candidate = u.compose(&a);
                if b.divides(&candidate) {
                    prop_assert!(common.divides(&candidate));
                }
            }

            #[test]
            fn cancellative((s, t1, t2) in (elem(2), elem(2), elem(2))) {
                if s.compose(&t1) == s.compose(&t2) {
                    prop_assert_eq!(t1, t2);
                }
            }
        }
    }
}
