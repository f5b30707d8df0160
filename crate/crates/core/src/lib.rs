//! Cohn-Jordan extensions `A(R; S)` of polynomial rings under an action of
//! `S = ℕ^k` by injective endomorphisms: exact arithmetic, windowed
//! left-ideal membership, closure operators, and explicit models.

pub mod error;
pub mod ext;
pub mod ideals;
pub mod models;
pub mod monoid;
pub mod parse;
pub mod poly;
pub mod ring;

pub use error::{CoreError, ParseError, Result};
pub use ext::{Ext, ExtElement, Extension, ModelAnswer, ModelOracle};
pub use monoid::{GroupElement, MonoidElement};
pub use poly::{AnyRing, QPoly, QPolyRing, ZPoly, ZPolyRing};
pub use ring::{RingElement, SRing, SRingDescriptor, Verdict};
