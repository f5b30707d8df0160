//! The contract a computable base ring with an `S`-action must satisfy.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_rational::BigRational;
use rand::RngCore;

use crate::error::{ParseError, Result};
use crate::ext::ModelOracle;
use crate::monoid::MonoidElement;

/// Exact ring arithmetic with canonical equality.
pub trait RingElement:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Identifies a base ring together with its action parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SRingDescriptor {
    /// Ring family, e.g. `"QPoly"`.
    pub family: String,
    /// Number of commuting generators of the acting monoid.
    pub rank: usize,
    /// Per-generator action parameters, rendered as text.
    pub action: Vec<String>,
}

impl fmt::Display for SRingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.family, self.action.join(";"))
    }
}

/// Outcome of a bounded search.
///
/// `Member` and `NonMember` are final: enlarging the search window never
/// revises them. `Unknown` records how far the search went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member {
        witness: MonoidElement,
        explanation: String,
    },
    NonMember {
        certificate: String,
    },
    Unknown {
        window_exhausted: MonoidElement,
    },
}

impl Verdict {
    pub fn member(witness: MonoidElement, explanation: impl Into<String>) -> Self {
        Verdict::Member {
            witness,
            explanation: explanation.into(),
        }
    }

    pub fn non_member(certificate: impl Into<String>) -> Self {
        Verdict::NonMember {
            certificate: certificate.into(),
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member { .. })
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, Verdict::NonMember { .. })
    }

    pub fn is_decisive(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }

    /// `Some(true)` for `Member`, `Some(false)` for `NonMember`.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Member { .. } => Some(true),
            Verdict::NonMember { .. } => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Member { .. } => "Member",
            Verdict::NonMember { .. } => "NonMember",
            Verdict::Unknown { .. } => "Unknown",
        }
    }

    pub fn witness(&self) -> Option<&MonoidElement> {
        match self {
            Verdict::Member { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Free-text detail: explanation, certificate, or exhausted window.
    pub fn detail(&self) -> String {
        match self {
            Verdict::Member { explanation, .. } => explanation.clone(),
            Verdict::NonMember { certificate } => certificate.clone(),
            Verdict::Unknown { window_exhausted } => {
                format!("window {window_exhausted} exhausted")
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Member { witness, .. } => write!(f, "Member(s={witness})"),
            Verdict::NonMember { certificate } => write!(f, "NonMember({certificate})"),
            Verdict::Unknown { window_exhausted } => write!(f, "Unknown(window={window_exhausted})"),
        }
    }
}

/// A computable ring `R` with an action of `ℕ^k` by injective unital
/// endomorphisms.
pub trait SRing: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: RingElement;

    fn descriptor(&self) -> SRingDescriptor;

    fn rank(&self) -> usize {
        1
    }

    /// The polynomial variable `x`.
    fn variable(&self) -> Self::Elem;

    /// Embeds a rational constant, if it lies in the ring.
    fn constant(&self, q: &BigRational) -> Option<Self::Elem>;

    /// The rational value of a constant element.
    fn constant_value(&self, r: &Self::Elem) -> Option<BigRational>;

    fn act(&self, s: &MonoidElement, r: &Self::Elem) -> Self::Elem;

    /// The unique `r'` with `act(s, r') = r`, if it exists in `R`.
    fn preimage(&self, s: &MonoidElement, r: &Self::Elem) -> Option<Self::Elem>;

    /// Decisive left-ideal membership in `R`; never returns `Unknown`.
    fn ideal_membership(&self, r: &Self::Elem, gens: &[Self::Elem]) -> Verdict;

    fn is_regular(&self, r: &Self::Elem) -> bool {
        !r.is_zero()
    }

    /// Generators of `{ f ∈ R : act(s, f) ∈ R·gens }`.
    fn preimage_ideal(&self, s: &MonoidElement, gens: &[Self::Elem]) -> Result<Vec<Self::Elem>>;

    /// A tidy generating set of `R·gens` (canonical where the ring allows).
    fn ideal_basis(&self, gens: &[Self::Elem]) -> Vec<Self::Elem>;

    /// A certificate that `act(s, r) ∉ R·act(s, gens)` for every `s`, from
    /// an action-invariant ring homomorphism.
    fn invariant_obstruction(&self, _r: &Self::Elem, _gens: &[Self::Elem]) -> Option<String> {
        None
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem, ParseError>;

    fn degree(&self, r: &Self::Elem) -> Option<usize>;

    /// A random element of degree at most `max_degree` with coefficients
    /// bounded by `height`.
    fn sample_element(&self, rng: &mut dyn RngCore, max_degree: usize, height: i64) -> Self::Elem;

    /// The explicit model of the extension, when one is known for these
    /// action parameters.
    fn registered_model(&self) -> Option<Arc<dyn ModelOracle<Self>>> {
        None
    }

    /// `R·small ⊆ R·big`.
    fn ideal_contains(&self, big: &[Self::Elem], small: &[Self::Elem]) -> bool {
        small
            .iter()
            .all(|g| self.ideal_membership(g, big).is_member())
    }

    fn ideals_equal(&self, a: &[Self::Elem], b: &[Self::Elem]) -> bool {
        self.ideal_contains(a, b) && self.ideal_contains(b, a)
    }
}
