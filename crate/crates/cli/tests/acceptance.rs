//! Acceptance run: one line per criterion, each with its time limit.
//! Exits non-zero if any criterion fails.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use cj_core::ideals::{IdealLab, SearchWindow};
use cj_core::models::{skew_in_r, HalfIntOracle, PuiseuxOracle, SkewPoly};
use cj_core::{Ext, Extension, GroupElement, QPoly, QPolyRing, SRing, Verdict, ZPolyRing};
use cjx::demo::{contradicts_model, correspondence_trial, left_division_trial, run_demo, trial_rng, DemoOptions};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        summary: summary.into(),
    }
}

/// Decisive verdicts checked against a model or an independent oracle,
/// and the contradictions found.
#[derive(Default)]
struct Soundness {
    checked: usize,
    contradictions: Vec<String>,
}

thread_local! {
    static SOUNDNESS: RefCell<Soundness> = RefCell::new(Soundness::default());
}

fn audit(claimed: Option<bool>, truth: bool, what: impl FnOnce() -> String) {
    let Some(claimed) = claimed else { return };
    SOUNDNESS.with(|s| {
        let mut s = s.borrow_mut();
        s.checked += 1;
        if claimed != truth {
            s.contradictions.push(what());
        }
    });
}

fn audit_model<R: SRing>(ext: &Extension<R>, v: &Verdict, a: &Ext<R>, gens: &[Ext<R>]) {
    if !v.is_decisive() || ext.model().is_none() {
        return;
    }
    SOUNDNESS.with(|s| {
        let mut s = s.borrow_mut();
        s.checked += 1;
        s.contradictions.extend(contradicts_model(ext, v, a, gens));
    });
}

/// `a ∈ A·gens` over ℚ[x^(1/2^∞)]: the gcd of the generators, lifted to a
/// common level, divides `a`.
fn gcd_oracle(e: &Extension<QPolyRing>, a: &Ext<QPolyRing>, gens: &[Ext<QPolyRing>]) -> bool {
    let t = e.common_denominator(gens.iter().chain(std::iter::once(a)));
    let lifted: Vec<QPoly> = gens.iter().map(|g| e.lift(g, &t)).collect();
    let d = QPoly::gcd_all(lifted.iter());
    if d.is_zero() {
        return a.is_zero();
    }
    e.lift(a, &t).rem(&d).is_zero()
}

/// `a ∈ A·g` over ℤ + ℤ[1/2][x]·x: exact division with a quotient whose
/// constant term is an integer and whose other coefficients are dyadic.
fn halfint_oracle(e: &Extension<ZPolyRing>, a: &Ext<ZPolyRing>, g: &Ext<ZPolyRing>) -> bool {
    let t = e.common_denominator([a, g]);
    let (q, r) = e.lift(a, &t).to_qpoly().div_rem(&e.lift(g, &t).to_qpoly());
    if !r.is_zero() {
        return false;
    }
    let scale = num_bigint::BigInt::from(2).pow(t.exponents()[0]);
    q.coeffs().iter().enumerate().all(|(i, c)| {
        let c = c / BigRational::from_integer(scale.pow(i as u32));
        let mut d = c.denom().clone();
        if i == 0 {
            return d.is_one();
        }
        while d.is_even() {
            d /= 2;
        }
        d.is_one()
    })
}

fn q_lab() -> IdealLab<QPolyRing> {
    IdealLab::new(Extension::new(QPolyRing::squaring()))
}

fn w(n: u32) -> SearchWindow {
    SearchWindow::rank_one(n)
}

fn non_noetherian() -> Outcome {
    let run = match run_demo("non-noetherian", &DemoOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let lab = IdealLab::new(Extension::new(ZPolyRing::doubling()));
    let e = lab.ext();
    let chain = lab.ascending_chain_demo(10, &w(4));
    for l in &chain.links {
        let (lo, up) = (&l.lower, &l.upper);
        audit(l.inclusion.as_bool(), halfint_oracle(e, lo, up), || format!("{lo} ∈ A·{up}"));
        audit(l.strictness.as_bool(), halfint_oracle(e, up, lo), || format!("{up} ∈ A·{lo}"));
        audit_model(e, &l.inclusion, lo, std::slice::from_ref(up));
        audit_model(e, &l.strictness, up, std::slice::from_ref(lo));
    }
    let certified = chain.links.iter().filter(|l| l.certified()).count();
    outcome(
        run.report.passed && chain.links.len() == 10 && chain.certified(),
        format!("{certified}/10 strict inclusions I_m ⊊ I_(m+1) for m = 0..9 over ℤ[x], x ↦ 2x"),
    )
}

fn model_isomorphism() -> Outcome {
    const PAIRS: usize = 1000;
    let mut failures = Vec::new();

    let q = Extension::new(QPolyRing::squaring());
    let to = PuiseuxOracle::to_model;
    for i in 0..PAIRS {
        let mut rng = trial_rng(SEED, i);
        let (a, b) = (q.sample(&mut rng, 3, 4, 9), q.sample(&mut rng, 3, 4, 9));
        let g: i64 = rng.random_range(-3..=3);
        let ok = to(&q.add(&a, &b)) == to(&a).add(&to(&b))
            && to(&q.mul(&a, &b)) == to(&a).mul(&to(&b))
            && to(&q.act(&GroupElement::single(g), &a)) == to(&a).act(g)
            && PuiseuxOracle::from_model(&to(&a)) == a;
        if !ok {
            failures.push(format!("Puiseux: a = {a}, b = {b}, g = {g}"));
        }
    }

    let z = Extension::new(ZPolyRing::doubling());
    let to = HalfIntOracle::to_model;
    for i in 0..PAIRS {
        let mut rng = trial_rng(SEED + 1, i);
        let (a, b) = (z.sample(&mut rng, 3, 4, 9), z.sample(&mut rng, 3, 4, 9));
        let g: i64 = rng.random_range(-3..=3);
        let ok = to(&z.add(&a, &b)) == to(&a).add(&to(&b))
            && to(&z.mul(&a, &b)) == to(&a).mul(&to(&b))
            && to(&z.act(&GroupElement::single(g), &a)) == to(&a).act(g)
            && HalfIntOracle::from_model(&to(&a)) == a;
        if !ok {
            failures.push(format!("half-integer: a = {a}, b = {b}, g = {g}"));
        }
    }
    let summary = match failures.first() {
        None => format!("{PAIRS} pairs per model: add, mul, act intertwined; round trip exact"),
        Some(f) => format!("{} failures, first {f}", failures.len()),
    };
    outcome(failures.is_empty(), summary)
}

fn correspondence() -> Outcome {
    const IDEALS: usize = 200;
    let lab = q_lab();
    let (mut pairs, mut decisive, mut disagreements, mut inadmissible) = (0, 0, 0, 0);
    for i in 0..IDEALS {
        let t = correspondence_trial(&lab, &w(6), 20, &mut trial_rng(SEED + 2, i));
        pairs += t.pairs;
        decisive += t.decisive;
        disagreements += t.disagreements.len();
        if !t.admissible.is_member() || !t.containment.is_member() {
            inadmissible += 1;
        }
        SOUNDNESS.with(|s| {
            let mut s = s.borrow_mut();
            s.checked += 2 * t.decisive;
            s.contradictions.extend(t.model_contradictions);
        });
    }
    let rate = decisive as f64 / pairs as f64;
    outcome(
        disagreements == 0 && rate >= 0.95 && inadmissible == 0,
        format!(
            "{IDEALS} ideals, {pairs} pairs: {disagreements} ΔΓ disagreements, decisive {:.1}% (≥ 95%), {inadmissible} families not admissible",
            100.0 * rate
        ),
    )
}

fn random_base_ideal(rng: &mut impl Rng, ring: &QPolyRing) -> Vec<QPoly> {
    let n = rng.random_range(1..=3);
    (0..n)
        .map(|_| loop {
            let p = ring.sample_element(rng, 3, 6);
            if !p.is_zero() {
                break p;
            }
        })
        .collect()
}

fn closure_operator() -> Outcome {
    const IDEALS: usize = 100;
    let lab = q_lab();
    let ring = lab.ring().clone();
    let e = lab.ext();
    let win = w(4);
    let mut bad = Vec::new();
    for i in 0..IDEALS {
        let mut rng = trial_rng(SEED + 3, i);
        let m = random_base_ideal(&mut rng, &ring);
        let mut n = m.clone();
        n.extend(random_base_ideal(&mut rng, &ring));
        let cm = lab.closure_generators(&m, &win);
        let cn = lab.closure_generators(&n, &win);
        let again = lab.closure_generators(&cm.gens, &win);
        if !(cm.decisive && cn.decisive && again.decisive) {
            bad.push(format!("closure of {m:?} not decisive"));
            continue;
        }
        if !ring.ideal_contains(&cm.gens, &m) {
            bad.push(format!("not extensive on ideal {}", show(&m)));
        }
        if !ring.ideal_contains(&cn.gens, &cm.gens) {
            bad.push(format!("not monotone on ideal {}", show(&m)));
        }
        if !ring.ideals_equal(&again.gens, &cm.gens) {
            bad.push(format!("not idempotent on ideal {}", show(&m)));
        }
        // independent: A·M ∩ R is generated by the gcd, which lies in R
        let d = QPoly::gcd_all(m.iter());
        let v = lab.closure_member(&d, &m, &win);
        audit(v.as_bool(), true, || format!("gcd {d} of {} in its closure", show(&m)));
        let gens: Vec<_> = m.iter().map(|r| e.embed(r.clone())).collect();
        let fam = lab.gamma_family(&gens, &win);
        for (s, entry) in fam.entries() {
            let v = lab.is_closed(&entry.gens, &win);
            if !v.is_member() {
                bad.push(format!("L_{s} of {} is not closed: {v}", show(&m)));
            }
        }
    }
    let summary = match bad.first() {
        None => format!("{IDEALS} ideals of ℚ[x]: extensive, monotone, idempotent, all decisive; every L_s closed"),
        Some(f) => format!("{} failures, first: {f}", bad.len()),
    };
    outcome(bad.is_empty(), summary)
}

fn show(gens: &[QPoly]) -> String {
    format!("({})", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
}

fn stability() -> Outcome {
    const IDEALS: usize = 50;
    let lab = q_lab();
    let e = lab.ext();
    let mut bad = Vec::new();
    let mut deepest = 0;
    for i in 0..IDEALS {
        let gens = lab.seeded_generators(SEED + 4 + i as u64, 3, 3);
        let v = lab.stability_check(&gens, &w(8));
        match v.witness() {
            Some(k) if v.is_member() && k.exponents()[0] <= 8 => {
                deepest = deepest.max(k.exponents()[0]);
                // φ_k(I) is generated by its contraction: the gcd at level 0
                let image: Vec<_> = gens.iter().map(|g| e.act_monoid(k, g)).collect();
                let t = e.common_denominator(image.iter());
                audit(Some(true), t.is_identity() || gcd_in_base(e, &image), || {
                    format!("stability witness {k} for {}", render(&gens))
                });
            }
            _ => bad.push(format!("{}: {v}", render(&gens))),
        }
    }
    let summary = match bad.first() {
        None => format!("{IDEALS} ideals of A: Member with k ≤ {deepest} (limit 8)"),
        Some(f) => format!("{} failures, first {f}", bad.len()),
    };
    outcome(bad.is_empty(), summary)
}

/// The gcd of the lifted generators comes from `R`, up to a unit.
fn gcd_in_base(e: &Extension<QPolyRing>, gens: &[Ext<QPolyRing>]) -> bool {
    let t = e.common_denominator(gens.iter());
    let d = QPoly::gcd_all(gens.iter().map(|g| e.lift(g, &t)).collect::<Vec<_>>().iter());
    e.normalize(t, d).denom().is_identity()
}

fn render(gens: &[Ext<QPolyRing>]) -> String {
    format!("ideal{{A}}[{}]", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; "))
}

fn bezout() -> Outcome {
    const PAIRS: usize = 100;
    let lab = q_lab();
    let e = lab.ext();
    let mut bad = Vec::new();
    for i in 0..PAIRS {
        let mut rng = trial_rng(SEED + 5, i);
        let gens = lab.sample_generators(&mut rng, 2, 3);
        let out = lab.principal_test(&gens, &w(3));
        let Some(g) = out.generator.filter(|_| out.verdict.is_member()) else {
            bad.push(format!("{}: {}", render(&gens), out.verdict));
            continue;
        };
        let single = std::slice::from_ref(&g);
        let two_way = gens.iter().all(|a| gcd_oracle(e, a, single)) && gcd_oracle(e, &g, &gens);
        audit(Some(true), two_way, || format!("generator {g} of {}", render(&gens)));
        if !two_way {
            bad.push(format!("{g} does not generate {}", render(&gens)));
        }
    }
    let summary = match bad.first() {
        None => format!("{PAIRS} pairs A·a + A·b: verified generator in both directions"),
        Some(f) => format!("{} failures, first {f}", bad.len()),
    };
    outcome(bad.is_empty(), summary)
}

fn principal_closed() -> Outcome {
    const SAMPLES: usize = 200;
    let lab = q_lab();
    let ring = lab.ring().clone();
    let e = lab.ext();
    let mut bad = Vec::new();
    for i in 0..SAMPLES {
        let mut rng = trial_rng(SEED + 6, i);
        let c = loop {
            let p = ring.sample_element(&mut rng, 5, 9);
            if !p.is_zero() {
                break p;
            }
        };
        let v = lab.is_closed(std::slice::from_ref(&c), &w(4));
        // independent: A·c ∩ R = Rc, so closure membership is divisibility by c
        let probe = ring.sample_element(&mut rng, 3, 6);
        let member = lab.closure_member(&probe, std::slice::from_ref(&c), &w(4));
        audit(member.as_bool(), probe.rem(&c).is_zero(), || format!("{probe} ∈ closure of ({c})"));
        let embedded = [e.embed(c.clone())];
        audit_model(e, &member, &e.embed(probe.clone()), &embedded);
        if !v.is_member() {
            bad.push(format!("({c}): {v}"));
        }
    }
    let summary = match bad.first() {
        None => format!("{SAMPLES} principal ideals (c) of ℚ[x]: closed, decisively"),
        Some(f) => format!("{} failures, first {f}", bad.len()),
    };
    outcome(bad.is_empty(), summary)
}

fn skew() -> Outcome {
    let t: SkewPoly = "t".parse().unwrap();
    let root: SkewPoly = "x^(1/2)".parse().unwrap();
    let xt: SkewPoly = "x*t".parse().unwrap();
    let product = t.mul(&root) == xt;
    let outside = !skew_in_r(&root);
    let trials: Vec<Verdict> = (0..100)
        .map(|i| left_division_trial(&mut trial_rng(SEED + 7, i)))
        .collect();
    let held = trials.iter().filter(|v| v.is_member()).count();
    let demo = run_demo("skew-ore", &DemoOptions::default()).map(|r| r.report.passed).unwrap_or(false);
    outcome(
        product && outside && held == 100 && demo,
        format!(
            "t·x^(1/2) = x·t: {product}; x^(1/2) ∉ R: {outside}; ac ∈ R ⇒ a ∈ R on {held}/100 pairs"
        ),
    )
}

fn soundness() -> Outcome {
    SOUNDNESS.with(|s| {
        let s = s.borrow();
        let summary = match s.contradictions.first() {
            None => format!("{} decisive verdicts audited, 0 contradictions", s.checked),
            Some(c) => format!("{} contradictions in {} verdicts, first {c}", s.contradictions.len(), s.checked),
        };
        outcome(s.contradictions.is_empty() && s.checked > 0, summary)
    })
}

/// Number, name, time limit in seconds, and the check itself.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "non-noetherian chain", Some(2), non_noetherian),
        (2, "model isomorphisms", Some(10), model_isomorphism),
        (3, "ΔΓ correspondence", Some(60), correspondence),
        (4, "closure operator", Some(60), closure_operator),
        (5, "stability", Some(60), stability),
        (6, "Bézout", Some(30), bezout),
        (7, "principal ideals closed", Some(30), principal_closed),
        (8, "skew example", Some(10), skew),
        (9, "verdict soundness", None, soundness),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < Duration::from_secs(l));
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = match limit {
            Some(l) => format!("{:.2} s < {l} s", elapsed.as_secs_f64()),
            None => "all criteria above".to_string(),
        };
        println!(
            "[{}] criterion {n}: {name}: {} ({timing})",
            if ok { "PASS" } else { "FAIL" },
            out.summary
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
