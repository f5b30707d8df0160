use super::{IdealLab, SearchWindow, WindowedFamily};
use crate::ext::Ext;
use crate::monoid::MonoidElement;
use crate::ring::{RingElement, SRing, Verdict};

/// Steps tried past the window when a model already certifies membership.
const EXTRA_STEPS: u32 = 4;

/// Largest numerator degree the extended search will build.
const EXTRA_DEGREE_LIMIT: usize = 4096;

impl<R: SRing> IdealLab<R> {
    /// The first `s` in `steps` with `φ_s(a) ∈ R·φ_s(gens)`.
    fn find_witness(
        &self,
        a: &R::Elem,
        gens: &[R::Elem],
        steps: impl IntoIterator<Item = MonoidElement>,
    ) -> Option<MonoidElement> {
        steps.into_iter().find(|s| {
            self.ring()
                .ideal_membership(&self.ring().act(s, a), &self.act_all(s, gens))
                .is_member()
        })
    }

    fn action_degree(&self, s: &MonoidElement) -> usize {
        self.ring()
            .degree(&self.ring().act(s, &self.ring().variable()))
            .unwrap_or(1)
    }

    /// Fallback once the window search found no witness: action-invariant
    /// obstruction, then the registered model.
    fn decide_without_witness(
        &self,
        a: &Ext<R>,
        lifted: &R::Elem,
        lifted_gens: &[R::Elem],
        gens: &[Ext<R>],
        w: &SearchWindow,
    ) -> Verdict {
        if let Some(cert) = self.ring().invariant_obstruction(lifted, lifted_gens) {
            return Verdict::non_member(cert);
        }
        let Some(model) = self.ext.model() else {
            return self.unknown(w);
        };
        match model.member(a, gens) {
            Some(ans) if !ans.member => Verdict::non_member(format!("{} model: {}", model.name(), ans.reason)),
            Some(ans) => {
                let extended = MonoidElement::new(
                    w.bound().exponents().iter().map(|e| e + EXTRA_STEPS).collect(),
                );
                let lifted_degree = lifted_gens
                    .iter()
                    .chain(std::iter::once(lifted))
                    .filter_map(|g| self.ring().degree(g))
                    .max()
                    .unwrap_or(0)
                    .max(1);
                let beyond = extended.below().into_iter().filter(|s| !s.divides(w.bound()));
                let affordable = beyond
                    .take_while(|s| lifted_degree * self.action_degree(s) <= EXTRA_DEGREE_LIMIT);
                match self.find_witness(lifted, lifted_gens, affordable) {
                    Some(s) => Verdict::member(
                        s.clone(),
                        format!("witness s = {s} found past the window after the {} model certified membership ({})", model.name(), ans.reason),
                    ),
                    None => self.unknown(w),
                }
            }
            None => self.unknown(w),
        }
    }

    /// Decides `a ∈ A·gens`.
    ///
    /// Lifts everything to `R` by a common denominator `t`, then searches
    /// `s ≤ bound` for `φ_s(φ_t(a)) ∈ R·φ_s(φ_t(gens))`.
    pub fn ext_ideal_member(&self, a: &Ext<R>, gens: &[Ext<R>], w: &SearchWindow) -> Verdict {
        let rank = self.ext.rank();
        if a.is_zero() {
            return Verdict::member(MonoidElement::identity(rank), "0 lies in every ideal");
        }
        let gens = Self::nonzero_ext(gens);
        if gens.is_empty() {
            return Verdict::non_member("the ideal is zero and the element is not");
        }
        let t = self.ext.common_denominator(gens.iter().chain(std::iter::once(a)));
        let lifted = self.ext.to_base(&t, a).expect("t is a common denominator");
        let lifted_gens: Vec<R::Elem> = gens
            .iter()
            .map(|g| self.ext.to_base(&t, g).expect("t is a common denominator"))
            .collect();
        if let Some(s) = self.find_witness(&lifted, &lifted_gens, w.steps()) {
            return Verdict::member(
                s.clone(),
                format!("after lifting by t = {t}: φ_s(φ_t(a)) ∈ R·φ_s(φ_t(gens)) at s = {s}"),
            );
        }
        self.decide_without_witness(a, &lifted, &lifted_gens, &gens, w)
    }

    /// Decides `r ∈ L_s = φ_s(I) ∩ R` through `φ_s⁻¹(r) ∈ I`.
    pub fn gamma_member(&self, r: &R::Elem, gens: &[Ext<R>], s: &MonoidElement, w: &SearchWindow) -> Verdict {
        let a = self.ext.act(&s.to_group().neg(), &self.ext.embed(r.clone()));
        self.ext_ideal_member(&a, gens, w)
    }

    /// Decides `r ∈ A·M ∩ R` by searching `φ_s(r) ∈ R·φ_s(M)`.
    pub fn closure_member(&self, r: &R::Elem, m: &[R::Elem], w: &SearchWindow) -> Verdict {
        let rank = self.ext.rank();
        if r.is_zero() {
            return Verdict::member(MonoidElement::identity(rank), "0 lies in every ideal");
        }
        let m = Self::nonzero(m);
        if m.is_empty() {
            return Verdict::non_member("the ideal is zero and the element is not");
        }
        if let Some(s) = self.find_witness(r, &m, w.steps()) {
            return Verdict::member(s.clone(), format!("φ_s(r) ∈ R·φ_s(M) at s = {s}"));
        }
        let embedded: Vec<Ext<R>> = m.iter().map(|g| self.ext.embed(g.clone())).collect();
        self.decide_without_witness(&self.ext.embed(r.clone()), r, &m, &embedded, w)
    }

    /// Decides `a ∈ Δ(family) = ⋃_s φ_s⁻¹(L_s)`.
    ///
    /// Any exact entry `L_s` with `φ_s(a) ∈ R` decides the question, since
    /// `a ∈ L ⇔ φ_s(a) ∈ φ_s(L) ∩ R`.
    pub fn delta_member(&self, a: &Ext<R>, family: &WindowedFamily<R::Elem>) -> Verdict {
        let rank = self.ext.rank();
        if a.is_zero() {
            return Verdict::member(MonoidElement::identity(rank), "0 lies in every ideal");
        }
        for (s, entry) in family.entries() {
            let Some(b) = self.ext.to_base(s, a) else {
                continue;
            };
            if self.ring().ideal_membership(&b, &entry.gens).is_member() {
                return Verdict::member(s.clone(), format!("φ_s(a) = {b} ∈ L_s at s = {s}"));
            }
            if entry.decisive {
                return Verdict::non_member(format!("φ_s(a) = {b} ∉ L_s at s = {s}, and L_s is exact"));
            }
        }
        Verdict::Unknown {
            window_exhausted: family.bound().clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Extension;
    use crate::poly::{QPoly, QPolyRing, ZPoly, ZPolyRing};

    fn q_lab() -> IdealLab<QPolyRing> {
        IdealLab::new(Extension::new(QPolyRing::squaring()))
    }
    fn z_lab() -> IdealLab<ZPolyRing> {
        IdealLab::new(Extension::new(ZPolyRing::doubling()))
    }
    fn w(n: u32) -> SearchWindow {
        SearchWindow::rank_one(n)
    }

    #[test]
    fn ext_membership_examples() {
        let lab = q_lab();
        let e = lab.ext();
        let root = e.parse_element("inv(1)[x]").unwrap();
        let x = e.parse_element("x").unwrap();
        let v = lab.ext_ideal_member(&root, std::slice::from_ref(&x), &w(4));
        assert!(v.is_non_member(), "{v}");
        let v = lab.ext_ideal_member(&e.parse_element("x^2 + x").unwrap(), std::slice::from_ref(&x), &w(4));
        assert_eq!(v.witness(), Some(&MonoidElement::single(0)));
        assert!(lab.ext_ideal_member(&x, &[root], &w(4)).is_member());
    }

    #[test]
    fn model_free_search_stays_sound() {
        let lab = IdealLab::new(Extension::without_model(QPolyRing::squaring()));
        let e = lab.ext();
        let root = e.parse_element("inv(1)[x]").unwrap();
        let x = e.parse_element("x").unwrap();
        // no model and no obstruction: the search can only run out
        assert!(matches!(
            lab.ext_ideal_member(&root, std::slice::from_ref(&x), &w(3)),
            Verdict::Unknown { .. }
        ));
        // the evaluation-at-0 obstruction is still decisive
        assert!(lab.ext_ideal_member(&e.one(), &[x], &w(3)).is_non_member());
    }

    #[test]
    fn gamma_membership_examples() {
        let lab = q_lab();
        let e = lab.ext();
        let root = e.parse_element("inv(1)[x]").unwrap();
        let s0 = MonoidElement::single(0);
        assert!(lab.gamma_member(&QPoly::x(), &[root], &s0, &w(3)).is_member());
        for s in 0..3 {
            let v = lab.gamma_member(&QPoly::one(), &[e.embed(QPoly::x())], &MonoidElement::single(s), &w(3));
            assert!(v.is_non_member());
        }
        let g = QPoly::from_i64(&[1, 1]);
        assert!(lab.gamma_member(&g, &[e.embed(g.clone())], &s0, &w(3)).is_member());
    }

    #[test]
    fn closure_membership_examples() {
        let lab = q_lab();
        assert_eq!(
            lab.closure_member(&QPoly::x(), &[QPoly::x()], &w(3)).witness(),
            Some(&MonoidElement::single(0))
        );
        assert!(lab.closure_member(&QPoly::one(), &[QPoly::x()], &w(3)).is_non_member());
        let z = z_lab();
        let v = z.closure_member(&ZPoly::from_i64(&[0, 2]), &[ZPoly::from_i64(&[0, 4])], &w(3));
        assert!(v.is_non_member(), "{v}");
        // x² ∈ A·4x: φ_2(x²) = 16x² = 4x·4x
        let v = z.closure_member(&ZPoly::from_i64(&[0, 0, 1]), &[ZPoly::from_i64(&[0, 4])], &w(3));
        assert_eq!(v.witness(), Some(&MonoidElement::single(2)));
    }

    #[test]
    fn closure_member_agrees_with_ext_member() {
        let lab = z_lab();
        let m = [ZPoly::from_i64(&[0, 4]), ZPoly::from_i64(&[6])];
        let embedded: Vec<_> = m.iter().map(|g| lab.ext().embed(g.clone())).collect();
        for r in [&[0, 2][..], &[0, 0, 1], &[2, 2], &[6, 1], &[12, 8, 3]] {
            let r = ZPoly::from_i64(r);
            let direct = lab.closure_member(&r, &m, &w(4));
            let via = lab.ext_ideal_member(&lab.ext().embed(r.clone()), &embedded, &w(4));
            assert_eq!(direct.as_bool(), via.as_bool(), "{r}");
        }
    }

    #[test]
    fn witness_past_window_when_model_certifies() {
        let lab = z_lab();
        // x² ∈ A·4x needs s = 2; a window of 0 finds it only through the model
        let v = lab.closure_member(&ZPoly::from_i64(&[0, 0, 1]), &[ZPoly::from_i64(&[0, 4])], &w(0));
        assert_eq!(v.witness(), Some(&MonoidElement::single(2)));
    }
}
