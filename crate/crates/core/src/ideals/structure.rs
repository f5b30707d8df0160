use std::fmt;

use super::{IdealLab, SearchWindow};
use crate::ext::Ext;
use crate::monoid::MonoidElement;
use crate::ring::{RingElement, SRing, Verdict};

/// Result of [`IdealLab::principal_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalOutcome<E> {
    pub verdict: Verdict,
    /// A verified generator, present exactly when the verdict is `Member`.
    pub generator: Option<crate::ext::ExtElement<E>>,
}

/// One step `I_m ⊆ I_(m+1)` of an ascending chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink<E> {
    pub m: u32,
    pub lower: crate::ext::ExtElement<E>,
    pub upper: crate::ext::ExtElement<E>,
    /// `lower ∈ A·upper`.
    pub inclusion: Verdict,
    /// `upper ∈ A·lower`; `NonMember` certifies strictness.
    pub strictness: Verdict,
}

impl<E> ChainLink<E> {
    pub fn certified(&self) -> bool {
        self.inclusion.is_member() && self.strictness.is_non_member()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport<E> {
    pub links: Vec<ChainLink<E>>,
}

impl<E> ChainReport<E> {
    /// Every inclusion holds and is strict.
    pub fn certified(&self) -> bool {
        self.links.iter().all(ChainLink::certified)
    }
}

impl<E: fmt::Display> fmt::Display for ChainReport<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.links {
            writeln!(
                f,
                "I_{} = A·{} ⊆ I_{} = A·{}: {}; strict: {}",
                l.m,
                l.lower,
                l.m + 1,
                l.upper,
                l.inclusion.label(),
                if l.strictness.is_non_member() { "yes" } else { "not certified" }
            )?;
        }
        Ok(())
    }
}

impl<R: SRing> IdealLab<R> {
    /// Every element of `xs` lies in `A·ys`.
    fn all_members(&self, xs: &[Ext<R>], ys: &[Ext<R>], w: &SearchWindow) -> Verdict {
        let mut deepest = MonoidElement::identity(self.ext.rank());
        for x in xs {
            match self.ext_ideal_member(x, ys, w) {
                Verdict::Member { witness, .. } => deepest = deepest.lcm(&witness),
                other => return other,
            }
        }
        Verdict::member(deepest, "all generators are members")
    }

    /// `A·xs = A·ys`, by membership of each generator on the other side.
    fn same_ideal(&self, xs: &[Ext<R>], ys: &[Ext<R>], w: &SearchWindow) -> Verdict {
        let forward = self.all_members(xs, ys, w);
        if !forward.is_member() {
            return forward;
        }
        self.all_members(ys, xs, w)
    }

    /// Searches `k ≤ bound` with `φ_k(I) = A·(φ_k(I) ∩ R)`.
    pub fn stability_check(&self, gens: &[Ext<R>], w: &SearchWindow) -> Verdict {
        let gens = Self::nonzero_ext(gens);
        let family = self.gamma_family(&gens, w);
        for (k, entry) in family.entries() {
            let image: Vec<Ext<R>> = gens.iter().map(|g| self.ext.act_monoid(k, g)).collect();
            let lk: Vec<Ext<R>> = entry.gens.iter().map(|r| self.ext.embed(r.clone())).collect();
            if self.same_ideal(&image, &lk, w).is_member() {
                return Verdict::member(
                    k.clone(),
                    format!("φ_k(I) = A·L_k at k = {k} with L_k generated by {}", render(&entry.gens)),
                );
            }
        }
        self.unknown(w)
    }

    /// Looks for a single generator of `A·gens`, verified by two-way
    /// membership.
    ///
    /// A registered model's generator is tried first; otherwise each
    /// generator `a` of some `L_s` is tried as `φ_s⁻¹(a)`.
    pub fn principal_test(&self, gens: &[Ext<R>], w: &SearchWindow) -> PrincipalOutcome<R::Elem> {
        let gens = Self::nonzero_ext(gens);
        if gens.is_empty() {
            return PrincipalOutcome {
                verdict: Verdict::member(MonoidElement::identity(self.ext.rank()), "the zero ideal is A·0"),
                generator: Some(self.ext.zero()),
            };
        }
        let mut candidates: Vec<Ext<R>> = Vec::new();
        if let Some(g) = self.ext.model().and_then(|m| m.principal_generator(&gens)) {
            candidates.push(g);
        }
        let family = self.gamma_family(&gens, w);
        for (s, entry) in family.entries() {
            for a in self.ring().ideal_basis(&entry.gens) {
                let g = self.ext.inverse_image(s, a);
                if !candidates.contains(&g) {
                    candidates.push(g);
                }
            }
        }
        candidates.extend(gens.iter().cloned());
        for g in candidates {
            if g.is_zero() {
                continue;
            }
            if self.same_ideal(&gens, std::slice::from_ref(&g), w).is_member() {
                return PrincipalOutcome {
                    verdict: Verdict::member(g.denom().clone(), format!("A·I = A·{g}, checked in both directions")),
                    generator: Some(g),
                };
            }
        }
        PrincipalOutcome {
            verdict: self.unknown(w),
            generator: None,
        }
    }

    /// The chain `I_m = A·φ_m⁻¹(x)` for `m = 0..n`, with each inclusion
    /// and its strictness decided.
    pub fn ascending_chain_demo(&self, n: u32, w: &SearchWindow) -> ChainReport<R::Elem> {
        let x = self.ext.embed(self.ring().variable());
        let gen = |m: u32| self.ext.inverse_image(&MonoidElement::single(m), self.ring().variable());
        let links = (0..n)
            .map(|m| {
                let lower = if m == 0 { x.clone() } else { gen(m) };
                let upper = gen(m + 1);
                ChainLink {
                    m,
                    inclusion: self.ext_ideal_member(&lower, std::slice::from_ref(&upper), w),
                    strictness: self.ext_ideal_member(&upper, std::slice::from_ref(&lower), w),
                    lower,
                    upper,
                }
            })
            .collect();
        ChainReport { links }
    }
}

fn render<E: RingElement>(gens: &[E]) -> String {
    if gens.is_empty() {
        return "0".into();
    }
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Extension;
    use crate::poly::{QPolyRing, ZPolyRing};

    fn w(n: u32) -> SearchWindow {
        SearchWindow::rank_one(n)
    }

    #[test]
    fn stability_examples() {
        let lab = IdealLab::new(Extension::new(QPolyRing::squaring()));
        let e = lab.ext();
        let root = e.parse_element("inv(1)[x]").unwrap();
        assert_eq!(lab.stability_check(&[root], &w(4)).witness(), Some(&MonoidElement::single(1)));
        assert_eq!(lab.stability_check(&[e.one()], &w(4)).witness(), Some(&MonoidElement::single(0)));
        let mixed = [e.parse_element("inv(2)[x - 1]").unwrap(), e.parse_element("x^2").unwrap()];
        assert!(lab.stability_check(&mixed, &w(6)).is_member());
    }

    #[test]
    fn principal_examples() {
        let lab = IdealLab::new(Extension::new(QPolyRing::squaring()));
        let e = lab.ext();
        let gens = [e.parse_element("x - 1").unwrap(), e.parse_element("inv(1)[x - 1]").unwrap()];
        let out = lab.principal_test(&gens, &w(3));
        assert!(out.verdict.is_member());
        assert_eq!(out.generator, Some(e.parse_element("inv(1)[x - 1]").unwrap()));
        let out = lab.principal_test(&[e.parse_element("x").unwrap()], &w(3));
        assert!(out.verdict.is_member());
        let g = out.generator.unwrap();
        assert!(lab.ext_ideal_member(&g, &[e.parse_element("x").unwrap()], &w(3)).is_member());
    }

    #[test]
    fn principal_over_integers() {
        let lab = IdealLab::new(Extension::new(ZPolyRing::doubling()));
        let e = lab.ext();
        let out = lab.principal_test(&[e.parse_element("2").unwrap(), e.parse_element("x").unwrap()], &w(3));
        assert!(out.verdict.is_member(), "{}", out.verdict);
        assert_eq!(out.generator, Some(e.parse_element("2").unwrap()));
    }

    #[test]
    fn non_noetherian_chain() {
        let lab = IdealLab::new(Extension::new(ZPolyRing::doubling()));
        let report = lab.ascending_chain_demo(10, &w(4));
        assert_eq!(report.links.len(), 10);
        assert!(report.certified(), "{report}");
        assert!(lab.ascending_chain_demo(0, &w(4)).links.is_empty());
    }
}
