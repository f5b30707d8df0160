//! Randomized property suites run through proptest's runner with a seeded
//! generator. Failing cases are shrunk by degree, then coefficient height,
//! then window, in that order, because that is the order of the generated
//! parameter tuples.

use std::fmt;
use std::time::Instant;

use cj_core::ideals::{IdealLab, SearchWindow};
use cj_core::models::{halfint_membership, DyadicPuiseux, HalfIntOracle, PuiseuxOracle};
use cj_core::{AnyRing, Ext, Extension, GroupElement, MonoidElement, QPoly, QPolyRing, RingElement, SRing, ZPolyRing};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::demo::left_division_trial;
use crate::error::{CliError, Result};
use crate::report::{CheckRecord, Expectation, Report};

pub const SUITES: &[(&str, &str)] = &[
    ("monoid", "Ore conditions and cancellation in ℕ^2"),
    ("ring", "ring axioms, action is an injective homomorphism, preimages"),
    ("extension", "ring axioms in A, automorphisms, model isomorphism"),
    ("ideals", "Δ(Γ(I)) = I, closure laws, admissibility, model agreement"),
    ("models", "Puiseux gcd, half-integer polynomials, skew polynomials"),
    ("all", "every suite above"),
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub ring: AnyRing,
    pub trials: u32,
    pub window: SearchWindow,
    pub seed: u64,
}

/// Debug-prints through `Display`, so counterexamples read as algebra.
#[derive(Clone)]
pub struct Shown<T>(pub T);

impl<T: fmt::Display> fmt::Debug for Shown<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn fnv(text: &str) -> u64 {
    text.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

struct Harness<'a> {
    suite: &'a str,
    opts: &'a SuiteOptions,
    records: Vec<CheckRecord>,
}

impl Harness<'_> {
    fn runner(&self, name: &str) -> TestRunner {
        let mut bytes = [0u8; 32];
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ fnv(name)).fill_bytes(&mut bytes);
        let config = Config {
            cases: self.opts.trials,
            failure_persistence: None,
            ..Config::default()
        };
        TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
    }

    fn property<S>(&mut self, name: &str, strategy: S, test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>)
    where
        S: Strategy,
        S::Value: fmt::Debug,
    {
        let op = format!("{}/{name}", self.suite);
        let start = Instant::now();
        let rank = 1;
        let verdict = if self.opts.trials == 0 {
            cj_core::Verdict::member(MonoidElement::identity(rank), "no cases requested")
        } else {
            match self.runner(&op).run(&strategy, test) {
                Ok(()) => cj_core::Verdict::member(
                    MonoidElement::identity(rank),
                    format!("{} cases passed", self.opts.trials),
                ),
                Err(TestError::Fail(reason, value)) => {
                    cj_core::Verdict::non_member(format!("minimal counterexample {value:?}: {reason}"))
                }
                Err(TestError::Abort(_)) => cj_core::Verdict::Unknown {
                    window_exhausted: self.opts.window.bound().clone(),
                },
            }
        };
        self.records.push(CheckRecord::new(
            self.records.len(),
            &op,
            Default::default(),
            self.opts.window.to_string(),
            &verdict,
            Some(Expectation::Member),
            start.elapsed(),
        ));
    }
}

fn sample<R: SRing>(ring: &R, deg: usize, height: i64, seed: u64) -> R::Elem {
    ring.sample_element(&mut ChaCha8Rng::seed_from_u64(seed), deg, height)
}

/// `(degree, height, seed)` mapped to an element of `R`.
fn elem<R: SRing>(ring: R) -> impl Strategy<Value = Shown<R::Elem>> {
    (0usize..=3, 1i64..=6, any::<u64>()).prop_map(move |(d, h, s)| Shown(sample(&ring, d, h, s)))
}

/// `(shift, degree, height, seed)` mapped to an element of `A`.
fn ext_elem<R: SRing>(ext: Extension<R>) -> impl Strategy<Value = Shown<Ext<R>>> {
    (0u32..=2, 0usize..=3, 1i64..=6, any::<u64>()).prop_map(move |(t, d, h, s)| {
        let shift = MonoidElement::new(vec![t; ext.rank()]);
        Shown(ext.normalize(shift, sample(ext.ring(), d, h, s)))
    })
}

/// A small random ideal of `A` and a probe element, from one parameter
/// tuple `(degree, height, window, seed)`.
#[derive(Clone)]
struct IdealCase<R: SRing> {
    gens: Vec<Ext<R>>,
    probe: Ext<R>,
    window: SearchWindow,
}

impl<R: SRing> fmt::Debug for IdealCase<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "I = ideal{{A}}[{}], a = {}, window {}", gens.join("; "), self.probe, self.window)
    }
}

fn ideal_case<R: SRing>(ext: Extension<R>, max_window: u32) -> impl Strategy<Value = IdealCase<R>> {
    (0usize..=2, 1i64..=5, 0..=max_window, any::<u64>()).prop_map(move |(d, h, w, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = 1 + (rng.next_u32() % 2) as usize;
        let draw = |rng: &mut ChaCha8Rng| {
            let t = MonoidElement::new(vec![rng.next_u32() % 3; ext.rank()]);
            ext.normalize(t, ext.ring().sample_element(rng, d, h))
        };
        let mut gens: Vec<Ext<R>> = (0..count).map(|_| draw(&mut rng)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            gens.push(ext.one());
        }
        let mut probe = draw(&mut rng);
        if rng.next_u32() % 2 == 0 {
            probe = ext.mul(&probe, &gens[0]);
        }
        IdealCase {
            gens,
            probe,
            window: SearchWindow::rank_one(w),
        }
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn monoid_suite(h: &mut Harness) {
    let m = || proptest::collection::vec(0u32..6, 2).prop_map(|v| Shown(MonoidElement::new(v)));
    h.property("compose-commutes", (m(), m()), |(a, b)| {
        check(a.0.compose(&b.0) == b.0.compose(&a.0), || "s∘t ≠ t∘s".into())
    });
    h.property("ore-pair", (m(), m()), |(a, b)| {
        let (t1, t2) = a.0.ore_pair(&b.0);
        check(t1.compose(&a.0) == t2.compose(&b.0), || format!("t1 = {t1}, t2 = {t2}"))?;
        check(t1.compose(&a.0) == a.0.lcm(&b.0), || "common multiple is not least".into())
    });
    h.property("cancellative", (m(), m(), m()), |(s, a, b)| {
        let same = s.0.compose(&a.0) == s.0.compose(&b.0);
        check(!same || a.0 == b.0, || "s∘a = s∘b with a ≠ b".into())
    });
    h.property("divide-exact", (m(), m()), |(a, b)| {
        check(a.0.compose(&b.0).divide_exact(&a.0) == Some(b.0.clone()), || "(a∘b)/a ≠ b".into())
    });
}

fn ring_suite<R: SRing>(h: &mut Harness, ring: R) {
    let e = || elem(ring.clone());
    let s = || (0u32..=3).prop_map(MonoidElement::single);
    h.property("axioms", (e(), e(), e()), |(a, b, c)| {
        let (a, b, c) = (a.0, b.0, c.0);
        check(a.times(&b) == b.times(&a), || "not commutative".into())?;
        check(a.times(&b).times(&c) == a.times(&b.times(&c)), || "not associative".into())?;
        check(a.times(&b.plus(&c)) == a.times(&b).plus(&a.times(&c)), || "not distributive".into())
    });
    let r = ring.clone();
    h.property("action-homomorphism", (e(), e(), s()), move |(a, b, s)| {
        let (a, b) = (a.0, b.0);
        check(r.act(&s, &a.times(&b)) == r.act(&s, &a).times(&r.act(&s, &b)), || "φ_s(ab) ≠ φ_s(a)φ_s(b)".into())?;
        check(r.act(&s, &a.plus(&b)) == r.act(&s, &a).plus(&r.act(&s, &b)), || "φ_s(a+b) ≠ φ_s(a)+φ_s(b)".into())?;
        check(r.act(&s, &R::Elem::one()).is_one(), || "φ_s(1) ≠ 1".into())
    });
    let r = ring.clone();
    h.property("action-injective", (e(), e(), s()), move |(a, b, s)| {
        check(a.0 == b.0 || r.act(&s, &a.0) != r.act(&s, &b.0), || format!("φ_{s} identifies two elements"))
    });
    let r = ring.clone();
    h.property("preimage", (e(), s()), move |(a, s)| {
        check(r.preimage(&s, &r.act(&s, &a.0)) == Some(a.0.clone()), || "preimage(φ_s(a)) ≠ a".into())
    });
    let r = ring.clone();
    h.property("ideal-combination", (e(), e(), e(), e()), move |(a, b, g, k)| {
        let f = a.0.times(&g.0).plus(&b.0.times(&k.0));
        check(r.ideal_membership(&f, &[g.0.clone(), k.0.clone()]).is_member(), || format!("{f} ∉ ({}, {})", g.0, k.0))
    });
}

/// Ring-homomorphism and round-trip checks for the registered models.
fn model_iso_property(h: &mut Harness, ring: &AnyRing) {
    match ring {
        AnyRing::Q(r) if r.registered_model().is_some() => {
            let ext = Extension::new(r.clone());
            let x = ext.clone();
            h.property("model-iso", (ext_elem(ext.clone()), ext_elem(ext), -3i64..=3), move |(a, b, g)| {
                let m = PuiseuxOracle::to_model;
                let (a, b) = (a.0, b.0);
                check(m(&x.add(&a, &b)) == m(&a).add(&m(&b)), || "sum".into())?;
                check(m(&x.mul(&a, &b)) == m(&a).mul(&m(&b)), || "product".into())?;
                check(m(&x.act(&GroupElement::single(g), &a)) == m(&a).act(g), || "action".into())?;
                check(PuiseuxOracle::from_model(&m(&a)) == a, || "round trip".into())
            });
        }
        AnyRing::Z(r) if r.registered_model().is_some() => {
            let ext = Extension::new(r.clone());
            let x = ext.clone();
            h.property("model-iso", (ext_elem(ext.clone()), ext_elem(ext), -3i64..=3), move |(a, b, g)| {
                let m = HalfIntOracle::to_model;
                let (a, b) = (a.0, b.0);
                check(m(&x.add(&a, &b)) == m(&a).add(&m(&b)), || "sum".into())?;
                check(m(&x.mul(&a, &b)) == m(&a).mul(&m(&b)), || "product".into())?;
                check(m(&x.act(&GroupElement::single(g), &a)) == m(&a).act(g), || "action".into())?;
                check(HalfIntOracle::from_model(&m(&a)) == a, || "round trip".into())
            });
        }
        _ => {}
    }
}

fn extension_suite<R: SRing>(h: &mut Harness, ring: R, any: &AnyRing) {
    let ext = Extension::new(ring);
    let e = || ext_elem(ext.clone());
    let x = ext.clone();
    h.property("axioms", (e(), e(), e()), move |(a, b, c)| {
        let (a, b, c) = (a.0, b.0, c.0);
        check(x.mul(&a, &b) == x.mul(&b, &a), || "not commutative".into())?;
        check(x.mul(&x.mul(&a, &b), &c) == x.mul(&a, &x.mul(&b, &c)), || "not associative".into())?;
        check(x.mul(&a, &x.add(&b, &c)) == x.add(&x.mul(&a, &b), &x.mul(&a, &c)), || "not distributive".into())?;
        check(x.sub(&a, &a).is_zero(), || "a - a ≠ 0".into())
    });
    let x = ext.clone();
    h.property("automorphisms", (e(), e(), -3i64..=3), move |(a, b, g)| {
        let (a, b, g) = (a.0, b.0, GroupElement::single(g));
        check(x.act(&g, &x.mul(&a, &b)) == x.mul(&x.act(&g, &a), &x.act(&g, &b)), || "φ_g(ab)".into())?;
        check(x.act(&g.neg(), &x.act(&g, &a)) == a, || "φ_-g φ_g ≠ id".into())
    });
    let x = ext.clone();
    h.property("normal-form-round-trip", e(), move |a| {
        check(x.parse_element(&a.0.to_string()).ok() == Some(a.0.clone()), || "print/parse changed the element".into())
    });
    model_iso_property(h, any);
}

fn ideals_suite<R: SRing>(h: &mut Harness, ring: R, max_window: u32) {
    let lab = IdealLab::new(Extension::new(ring));
    let ext = lab.ext().clone();
    let l = lab.clone();
    h.property("delta-gamma", ideal_case(ext.clone(), max_window), move |c| {
        let fam = l.gamma_family(&c.gens, &c.window);
        let delta = l.delta_member(&c.probe, &fam);
        let direct = l.ext_ideal_member(&c.probe, &c.gens, &c.window);
        match (delta.as_bool(), direct.as_bool()) {
            (Some(x), Some(y)) => check(x == y, || format!("Δ says {delta}, direct says {direct}")),
            _ => Ok(()),
        }
    });
    let l = lab.clone();
    h.property("model-agreement", ideal_case(ext.clone(), max_window), move |c| {
        let v = l.ext_ideal_member(&c.probe, &c.gens, &c.window);
        match crate::demo::contradicts_model(l.ext(), &v, &c.probe, &c.gens) {
            Some(msg) => Err(TestCaseError::fail(msg)),
            None => Ok(()),
        }
    });
    let l = lab.clone();
    h.property("closure-laws", ideal_case(ext.clone(), max_window), move |c| {
        let m: Vec<R::Elem> = c.gens.iter().map(|g| g.num().clone()).collect();
        let ring = l.ring();
        let cl = l.closure_generators(&m, &c.window);
        check(ring.ideal_contains(&cl.gens, &m), || "closure is not extensive".into())?;
        if cl.decisive {
            let again = l.closure_generators(&cl.gens, &c.window);
            check(ring.ideals_equal(&again.gens, &cl.gens), || "closure is not idempotent".into())?;
        }
        Ok(())
    });
    let l = lab;
    h.property("gamma-family", ideal_case(ext, max_window), move |c| {
        let fam = l.gamma_family(&c.gens, &c.window);
        let containment = l.shift_containment(&fam);
        check(!containment.is_non_member(), || containment.detail())?;
        let adm = l.admissible_check_family(&fam, 3, 0);
        check(!adm.is_non_member(), || adm.detail())
    });
}

fn models_suite(h: &mut Harness) {
    let q = Extension::new(QPolyRing::squaring());
    let p = || ext_elem(q.clone()).prop_map(|a| Shown(PuiseuxOracle::to_model(&a.0)));
    h.property("puiseux-gcd", (p(), p()), |(a, b)| {
        let g = DyadicPuiseux::gcd(&a.0, &b.0);
        check(DyadicPuiseux::divides(&g, &a.0) && DyadicPuiseux::divides(&g, &b.0), || format!("gcd {g} is not a common divisor"))?;
        let (g2, u, v) = DyadicPuiseux::xgcd(&a.0, &b.0);
        check(u.mul(&a.0).add(&v.mul(&b.0)) == g2, || "Bezout identity fails".into())
    });
    h.property("puiseux-contraction", (p(), p()), |(a, b)| {
        let c = a.0.contraction();
        let c_model = DyadicPuiseux::from_level(0, &c);
        check(a.0.is_zero() || DyadicPuiseux::divides(&a.0, &c_model), || format!("{a:?} does not divide its contraction {c}"))?;
        let ab = a.0.mul(&b.0);
        let cab = ab.contraction();
        check(ab.is_zero() || cab.is_zero() || c.divides(&cab), || "contraction is not monotone".into())
    });
    let z = Extension::new(ZPolyRing::doubling());
    let hq = || ext_elem(z.clone()).prop_map(|a| Shown(HalfIntOracle::to_model(&a.0)));
    h.property("halfint-ring", (hq(), hq()), |(a, b)| {
        check(halfint_membership(a.0.mul(&b.0).as_qpoly()), || "product left the ring".into())?;
        check(halfint_membership(a.0.sub(&b.0).as_qpoly()), || "difference left the ring".into())?;
        check(!halfint_membership(&QPoly::from_coeffs(vec![num_rational::BigRational::new(1.into(), 2.into())])), || "1/2 accepted".into())
    });
    h.property("skew-left-division", any::<u64>(), |seed| {
        let v = left_division_trial(&mut ChaCha8Rng::seed_from_u64(seed));
        check(v.is_member(), || v.detail())
    });
    model_iso_property(h, &AnyRing::Q(QPolyRing::squaring()));
    model_iso_property(h, &AnyRing::Z(ZPolyRing::doubling()));
}

fn run_one(h: &mut Harness, name: &str) {
    let ring = h.opts.ring.clone();
    let max_window = h.opts.window.bound().exponents().iter().copied().max().unwrap_or(0);
    match name {
        "monoid" => monoid_suite(h),
        "ring" => match &ring {
            AnyRing::Q(r) => ring_suite(h, r.clone()),
            AnyRing::Z(r) => ring_suite(h, r.clone()),
        },
        "extension" => match &ring {
            AnyRing::Q(r) => extension_suite(h, r.clone(), &ring),
            AnyRing::Z(r) => extension_suite(h, r.clone(), &ring),
        },
        "ideals" => match &ring {
            AnyRing::Q(r) => ideals_suite(h, r.clone(), max_window),
            AnyRing::Z(r) => ideals_suite(h, r.clone(), max_window),
        },
        "models" => models_suite(h),
        _ => unreachable!("validated by run_suite"),
    }
}

/// Runs a suite (or `all`) and reports one record per property.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    let names: Vec<&str> = match name {
        "all" => SUITES.iter().map(|(n, _)| *n).filter(|n| *n != "all").collect(),
        n if SUITES.iter().any(|(s, _)| *s == n) => vec![n],
        _ => return Err(CliError::usage(format!("unknown suite {name:?}; run `cjx list`"))),
    };
    let mut records = Vec::new();
    for n in names {
        let mut h = Harness {
            suite: n,
            opts,
            records: Vec::new(),
        };
        run_one(&mut h, n);
        for mut r in h.records {
            r.index = records.len();
            records.push(r);
        }
    }
    Ok(Report::new(
        &format!("proptest:{name}"),
        opts.ring.to_string(),
        opts.window.to_string(),
        opts.seed,
        records,
    ))
}
