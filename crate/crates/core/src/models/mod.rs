//! Hand-built concrete models of the extension for the flagship actions,
//! plus the skew polynomial ring.

pub mod halfint;
pub mod puiseux;
pub mod ratfunc;
pub mod skew;

pub use halfint::{halfint_membership, HalfIntOracle, HalfIntPoly};
pub use puiseux::{DyadicPuiseux, PuiseuxOracle};
pub use ratfunc::DyadicRatFunc;
pub use skew::{skew_in_r, skew_mul, SkewPoly};
