//! Finitely generated left ideals of `R` and of `A`, the correspondence
//! `L ↦ {L_s = φ_s(L) ∩ R}`, the closure operator `M ↦ A·M ∩ R`, and
//! bounded checkers returning three-valued [`Verdict`]s.
//!
//! Every unbounded union over `S` is truncated to a [`SearchWindow`].
//! `Member` always carries a witness found by exact computation; `NonMember`
//! comes only from a registered model or an action-invariant obstruction;
//! everything else is `Unknown`.

mod closure;
mod membership;
mod structure;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, ParseError, Result};
use crate::ext::{Ext, ExtElement, Extension};
use crate::monoid::MonoidElement;
use crate::parse::split_top_level;
use crate::ring::{RingElement, SRing, Verdict};

pub use closure::Closure;
pub use structure::{ChainLink, ChainReport, PrincipalOutcome};

/// Consecutive unchanged closure steps needed to report heuristic
/// stabilization.
pub const DEFAULT_MARGIN: usize = 3;

/// Truncation of the unions over `S`: every searched `s` satisfies
/// `s ≤ bound` componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchWindow {
    bound: MonoidElement,
    margin: usize,
}

impl SearchWindow {
    pub fn new(bound: MonoidElement, margin: usize) -> Result<Self> {
        if margin == 0 {
            return Err(CoreError::Invalid("stabilization margin must be at least 1".into()));
        }
        Ok(SearchWindow { bound, margin })
    }

    /// `s ≤ n` for a rank-one monoid, default margin.
    pub fn rank_one(n: u32) -> Self {
        SearchWindow {
            bound: MonoidElement::single(n),
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_margin(self, margin: usize) -> Result<Self> {
        Self::new(self.bound, margin)
    }

    pub fn bound(&self) -> &MonoidElement {
        &self.bound
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Every `s ≤ bound`, smallest total degree first.
    pub fn steps(&self) -> Vec<MonoidElement> {
        self.bound.below()
    }
}

impl std::str::FromStr for SearchWindow {
    type Err = CoreError;

    /// `"6"` or `"6,4"`.
    fn from_str(text: &str) -> Result<Self> {
        let bound: MonoidElement = text
            .parse()
            .map_err(|e: ParseError| CoreError::Invalid(format!("bad window {text:?}: {}", e.message)))?;
        Self::new(bound, DEFAULT_MARGIN)
    }
}

impl fmt::Display for SearchWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bound)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    R,
    A,
}

/// A finitely generated left ideal, given by generators in `R` or in `A`.
/// Zero generators are dropped, so the zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinGenLeftIdeal<E> {
    Base(Vec<E>),
    Ext(Vec<ExtElement<E>>),
}

impl<E: RingElement> FinGenLeftIdeal<E> {
    pub fn base(gens: Vec<E>) -> Self {
        FinGenLeftIdeal::Base(gens.into_iter().filter(|g| !g.is_zero()).collect())
    }

    pub fn ext(gens: Vec<ExtElement<E>>) -> Self {
        FinGenLeftIdeal::Ext(gens.into_iter().filter(|g| !g.is_zero()).collect())
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            FinGenLeftIdeal::Base(_) => Ambient::R,
            FinGenLeftIdeal::Ext(_) => Ambient::A,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FinGenLeftIdeal::Base(g) => g.len(),
            FinGenLeftIdeal::Ext(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Generators promoted to `A` (`R`-generators are embedded).
    pub fn to_ext<R: SRing<Elem = E>>(&self, ext: &Extension<R>) -> Vec<ExtElement<E>> {
        match self {
            FinGenLeftIdeal::Base(g) => g.iter().map(|r| ext.embed(r.clone())).collect(),
            FinGenLeftIdeal::Ext(g) => g.clone(),
        }
    }

    /// Generators in `R`, if the ideal was given over `R`.
    pub fn base_gens(&self) -> Option<&[E]> {
        match self {
            FinGenLeftIdeal::Base(g) => Some(g),
            FinGenLeftIdeal::Ext(_) => None,
        }
    }
}

impl<E: RingElement> fmt::Display for FinGenLeftIdeal<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, gens): (&str, Vec<String>) = match self {
            FinGenLeftIdeal::Base(g) => ("R", g.iter().map(|x| x.to_string()).collect()),
            FinGenLeftIdeal::Ext(g) => ("A", g.iter().map(|x| x.to_string()).collect()),
        };
        write!(f, "ideal{{{tag}}}[{}]", gens.join("; "))
    }
}

/// Parses `ideal{A}[g1; g2; …]` or `ideal{R}[…]`.
pub fn parse_ideal<R: SRing>(ext: &Extension<R>, text: &str) -> std::result::Result<FinGenLeftIdeal<R::Elem>, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    let body = trimmed
        .strip_prefix("ideal{")
        .ok_or_else(|| ParseError::new(offset, "expected ideal{A}[...] or ideal{R}[...]"))?;
    let (ambient, rest) = if let Some(rest) = body.strip_prefix("A}") {
        (Ambient::A, rest)
    } else if let Some(rest) = body.strip_prefix("R}") {
        (Ambient::R, rest)
    } else {
        return Err(ParseError::new(offset + 6, "ambient must be A or R"));
    };
    let start = offset + 8;
    let inner = rest
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(start, "generators must be enclosed in [ ]"))?;
    let inner_start = text.find('[').map_or(start, |p| p + 1);
    let mut gens_r = Vec::new();
    let mut gens_a = Vec::new();
    for piece in split_top_level(inner, ';') {
        let at = inner_start + inner.find(piece.as_str()).unwrap_or(0);
        let shift = |e: ParseError| ParseError::new(at + e.position, e.message);
        match ambient {
            Ambient::R => gens_r.push(ext.ring().parse_element(&piece).map_err(shift)?),
            Ambient::A => gens_a.push(ext.parse_element(&piece).map_err(shift)?),
        }
    }
    Ok(match ambient {
        Ambient::R => FinGenLeftIdeal::base(gens_r),
        Ambient::A => FinGenLeftIdeal::ext(gens_a),
    })
}

/// One entry `L_s` of a windowed family: generators of an ideal of `R` and
/// whether they are known to generate `L_s` exactly (rather than a subideal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEntry<E> {
    pub gens: Vec<E>,
    pub decisive: bool,
}

/// The family `{L_s}` restricted to `s ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedFamily<E> {
    bound: MonoidElement,
    entries: BTreeMap<MonoidElement, FamilyEntry<E>>,
}

impl<E: RingElement> WindowedFamily<E> {
    pub fn new(bound: MonoidElement) -> Self {
        WindowedFamily {
            bound,
            entries: BTreeMap::new(),
        }
    }

    /// A hand-built family, every entry taken as exact.
    pub fn from_fn(bound: MonoidElement, mut f: impl FnMut(&MonoidElement) -> Vec<E>) -> Self {
        let mut fam = Self::new(bound.clone());
        for s in bound.below() {
            let gens = f(&s);
            fam.insert(s, gens, true);
        }
        fam
    }

    pub fn insert(&mut self, s: MonoidElement, gens: Vec<E>, decisive: bool) {
        self.entries.insert(s, FamilyEntry { gens, decisive });
    }

    pub fn bound(&self) -> &MonoidElement {
        &self.bound
    }

    pub fn get(&self, s: &MonoidElement) -> Option<&FamilyEntry<E>> {
        self.entries.get(s)
    }

    /// Entries in search order (smallest total degree first).
    pub fn entries(&self) -> Vec<(&MonoidElement, &FamilyEntry<E>)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by_key(|(s, _)| (s.total_degree(), (*s).clone()));
        v
    }

    pub fn is_decisive(&self) -> bool {
        self.entries.values().all(|e| e.decisive)
    }
}

/// Bundles an extension with the ideal-theoretic checkers.
#[derive(Clone, Debug)]
pub struct IdealLab<R: SRing> {
    ext: Extension<R>,
}

impl<R: SRing> IdealLab<R> {
    pub fn new(ext: Extension<R>) -> Self {
        IdealLab { ext }
    }

    pub fn ext(&self) -> &Extension<R> {
        &self.ext
    }

    pub fn ring(&self) -> &R {
        self.ext.ring()
    }

    fn nonzero<E: RingElement>(gens: &[E]) -> Vec<E> {
        gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    fn nonzero_ext(gens: &[Ext<R>]) -> Vec<Ext<R>> {
        gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    fn act_all(&self, s: &MonoidElement, gens: &[R::Elem]) -> Vec<R::Elem> {
        gens.iter().map(|g| self.ring().act(s, g)).collect()
    }

    fn unknown(&self, w: &SearchWindow) -> Verdict {
        Verdict::Unknown {
            window_exhausted: w.bound().clone(),
        }
    }
}
