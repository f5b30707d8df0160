use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IdealLab, SearchWindow, WindowedFamily};
use crate::ext::Ext;
use crate::monoid::MonoidElement;
use crate::ring::{RingElement, SRing, Verdict};

/// Result of accumulating `⋃_s φ_s⁻¹(R·φ_s(M)) ∩ R` over a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure<E> {
    /// Generators of the union over the searched steps.
    pub gens: Vec<E>,
    /// The union is known to be the whole closure `A·M ∩ R`.
    pub decisive: bool,
    /// The step at which the computation stopped.
    pub last_step: MonoidElement,
    /// The chain was unchanged for `margin` consecutive steps (heuristic).
    pub stabilized: bool,
    /// The closure as computed by a registered model, when available.
    pub model_closure: Option<Vec<E>>,
    pub note: String,
}

impl<R: SRing> IdealLab<R> {
    /// Accumulates `φ_s⁻¹(R·φ_s(M)) ∩ R` for `s ≤ bound`.
    pub fn closure_generators(&self, m: &[R::Elem], w: &SearchWindow) -> Closure<R::Elem> {
        let ring = self.ring();
        let rank = self.ext.rank();
        let m = Self::nonzero(m);
        if m.is_empty() {
            return Closure {
                gens: Vec::new(),
                decisive: true,
                last_step: MonoidElement::identity(rank),
                stabilized: true,
                model_closure: Some(Vec::new()),
                note: "the zero ideal is closed".into(),
            };
        }
        let embedded: Vec<Ext<R>> = m.iter().map(|g| self.ext.embed(g.clone())).collect();
        let model_closure = self.ext.model().and_then(|o| o.contraction(&embedded));
        let mut acc = ring.ideal_basis(&m);
        let mut unchanged = 0usize;
        let mut last = MonoidElement::identity(rank);
        for s in w.steps() {
            last = s.clone();
            let pre = match ring.preimage_ideal(&s, &self.act_all(&s, &m)) {
                Ok(p) => p,
                Err(e) => {
                    return Closure {
                        gens: acc,
                        decisive: false,
                        last_step: s,
                        stabilized: false,
                        model_closure,
                        note: e.to_string(),
                    }
                }
            };
            if ring.ideal_contains(&acc, &pre) {
                unchanged += 1;
            } else {
                acc.extend(pre);
                acc = ring.ideal_basis(&acc);
                unchanged = 0;
            }
            if let Some(c) = &model_closure {
                if ring.ideal_contains(&acc, c) {
                    return Closure {
                        gens: acc,
                        decisive: true,
                        last_step: s,
                        stabilized: true,
                        model_closure: model_closure.clone(),
                        note: "the registered model computes the same closure".into(),
                    };
                }
            } else if unchanged >= w.margin() {
                return Closure {
                    gens: acc,
                    decisive: false,
                    last_step: s,
                    stabilized: true,
                    model_closure: None,
                    note: format!("unchanged for {unchanged} consecutive steps"),
                };
            }
        }
        Closure {
            gens: acc,
            decisive: false,
            last_step: last,
            stabilized: false,
            note: if model_closure.is_some() {
                "the window ends before the union reaches the model's closure".into()
            } else {
                "window exhausted".into()
            },
            model_closure,
        }
    }

    /// Decides `M = A·M ∩ R`.
    pub fn is_closed(&self, m: &[R::Elem], w: &SearchWindow) -> Verdict {
        let ring = self.ring();
        let m = Self::nonzero(m);
        let cl = self.closure_generators(&m, w);
        let candidates = cl.gens.iter().chain(cl.model_closure.iter().flatten());
        for f in candidates {
            if !ring.ideal_membership(f, &m).is_member() {
                return Verdict::non_member(format!("{f} lies in the closure but not in M"));
            }
        }
        if cl.decisive {
            Verdict::member(cl.last_step, format!("closure equals M: {}", cl.note))
        } else {
            self.unknown(w)
        }
    }

    /// `L_s = φ_s(I) ∩ R` for every `s ≤ bound`.
    ///
    /// For `s` a multiple of the common denominator `t` of the generators,
    /// `φ_s(I) = A·φ_s(gens)` with `φ_s(gens) ⊆ R`, so `L_s` is a closure.
    /// Otherwise `L_s = { f : φ_u(f) ∈ L_(s+u) }` with `s + u = lcm(s, t)`.
    pub fn gamma_family(&self, gens: &[Ext<R>], w: &SearchWindow) -> WindowedFamily<R::Elem> {
        let gens = Self::nonzero_ext(gens);
        let t = self.ext.common_denominator(gens.iter());
        let mut closures: BTreeMap<MonoidElement, Closure<R::Elem>> = BTreeMap::new();
        let mut closure_at = |s: &MonoidElement| -> Closure<R::Elem> {
            closures
                .entry(s.clone())
                .or_insert_with(|| {
                    let base: Vec<R::Elem> = gens
                        .iter()
                        .map(|g| self.ext.to_base(s, g).expect("s is a multiple of every denominator"))
                        .collect();
                    self.closure_generators(&base, w)
                })
                .clone()
        };
        let mut family = WindowedFamily::new(w.bound().clone());
        for s in w.steps() {
            if t.divides(&s) {
                let cl = closure_at(&s);
                family.insert(s, cl.gens, cl.decisive);
            } else {
                let top = s.lcm(&t);
                let u = top.divide_exact(&s).expect("lcm is a multiple");
                let cl = closure_at(&top);
                match self.ring().preimage_ideal(&u, &cl.gens) {
                    Ok(pre) => family.insert(s, pre, cl.decisive),
                    Err(_) => family.insert(s, Vec::new(), false),
                }
            }
        }
        family
    }

    /// Checks `X_k = { r : φ_s(r) ∈ X_(s+k) }` on the window, for the
    /// generators of both sides and `samples` random elements per pair.
    pub fn admissible_check_family(&self, family: &WindowedFamily<R::Elem>, samples: usize, seed: u64) -> Verdict {
        let ring = self.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut undecided = false;
        let mut checked = 0usize;
        for (k, xk) in family.entries() {
            for (sk, xsk) in family.entries() {
                let Some(s) = sk.divide_exact(k) else {
                    continue;
                };
                let mut probes: Vec<R::Elem> = xk.gens.clone();
                if let Ok(pre) = ring.preimage_ideal(&s, &xsk.gens) {
                    probes.extend(pre);
                }
                let pool = probes.clone();
                for i in 0..samples {
                    let r = ring.sample_element(&mut rng, 3, 5);
                    let probe = match pool.choose(&mut rng) {
                        Some(g) if i % 2 == 0 => r.times(g),
                        _ => r,
                    };
                    probes.push(probe);
                }
                let exact = xk.decisive && xsk.decisive;
                for r in &probes {
                    let lhs = ring.ideal_membership(r, &xk.gens).is_member();
                    let rhs = ring.ideal_membership(&ring.act(&s, r), &xsk.gens).is_member();
                    checked += 1;
                    if lhs != rhs {
                        if exact {
                            return Verdict::non_member(format!(
                                "r = {r}, s = {s}, k = {k}: r ∈ X_k is {lhs} but φ_s(r) ∈ X_(s+k) is {rhs}"
                            ));
                        }
                        undecided = true;
                    }
                }
                undecided |= !exact;
            }
        }
        if undecided {
            Verdict::Unknown {
                window_exhausted: family.bound().clone(),
            }
        } else {
            Verdict::member(
                family.bound().clone(),
                format!("{checked} probes satisfy X_k = R ∩ φ_s⁻¹(X_(s+k)) on the window"),
            )
        }
    }

    /// Admissibility of the family `Γ(I)` on the window.
    pub fn admissible_check(&self, gens: &[Ext<R>], w: &SearchWindow, samples: usize, seed: u64) -> Verdict {
        self.admissible_check_family(&self.gamma_family(gens, w), samples, seed)
    }

    /// Checks `φ_t(X_k) ⊆ X_(t+k)` for every pair of entries in the window.
    pub fn shift_containment(&self, family: &WindowedFamily<R::Elem>) -> Verdict {
        let ring = self.ring();
        let mut undecided = false;
        for (k, xk) in family.entries() {
            for (tk, xtk) in family.entries() {
                let Some(t) = tk.divide_exact(k) else {
                    continue;
                };
                let image = self.act_all(&t, &xk.gens);
                if !ring.ideal_contains(&xtk.gens, &image) {
                    if xtk.decisive {
                        return Verdict::non_member(format!(
                            "φ_t(X_k) ⊄ X_(t+k) for t = {t}, k = {k}"
                        ));
                    }
                    undecided = true;
                }
            }
        }
        if undecided {
            Verdict::Unknown {
                window_exhausted: family.bound().clone(),
            }
        } else {
            Verdict::member(family.bound().clone(), "φ_t(X_k) ⊆ X_(t+k) throughout the window")
        }
    }

    /// Random helper shared by checkers that sample ideals: `count`
    /// elements of `A` with shifts at most `max_shift`.
    pub fn sample_generators(&self, rng: &mut dyn rand::RngCore, count: usize, max_shift: u32) -> Vec<Ext<R>> {
        (0..count)
            .map(|_| loop {
                let g = self.ext.sample(rng, max_shift, 2, 4);
                if !g.is_zero() {
                    break g;
                }
            })
            .collect()
    }

    /// Seeded variant of [`IdealLab::sample_generators`].
    pub fn seeded_generators(&self, seed: u64, count: usize, max_shift: u32) -> Vec<Ext<R>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = count.max(1);
        let n = rng.random_range(1..=count);
        self.sample_generators(&mut rng, n, max_shift)
    }
}
