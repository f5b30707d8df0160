//! Concrete base rings: `ℚ[x]` and `ℤ[x]` acted on by `σ(x) = c·x^d`.

pub mod qpoly;
pub mod rings;
pub mod zgroebner;
pub mod zpoly;

pub use qpoly::QPoly;
pub use rings::{AnyRing, QPolyRing, ZPolyRing, DEFAULT_DEGREE_CAP};
pub use zpoly::ZPoly;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Joins `(coefficient, monomial)` pairs as `3*x^2 - 1/2*x + 1`.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (BigRational, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        let body = if m.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            m
        } else {
            format!("{abs}*{m}")
        };
        match (out.is_empty(), c.is_negative()) {
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (true, false) => out.push_str(&body),
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
