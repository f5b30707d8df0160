//! Built-in demonstrations with fixed default seeds.

use std::collections::BTreeMap;
use std::time::Instant;

use cj_core::ideals::{IdealLab, SearchWindow};
use cj_core::models::{skew_in_r, DyadicRatFunc, SkewPoly};
use cj_core::{Ext, Extension, MonoidElement, QPoly, QPolyRing, SRing, Verdict, ZPolyRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::report::{CheckRecord, Expectation, Report};

pub const DEMOS: &[(&str, &str)] = &[
    ("non-noetherian", "strictly ascending chain A·x ⊊ A·x/2 ⊊ … over ℤ[x], x ↦ 2x"),
    ("bezout-gcd", "random two-generator ideals over ℚ[x], x ↦ x², are principal"),
    ("skew-ore", "t·x^(1/2) = x·t in D[t; σ] and left division by elements of K(x)[t; σ]"),
    ("correspondence", "Δ(Γ(I)) = I and admissibility of Γ(I) on random ideals"),
];

#[derive(Clone, Debug)]
pub struct DemoOptions {
    pub seed: u64,
    pub trials: Option<usize>,
    pub window: Option<SearchWindow>,
    pub parallel: bool,
}

impl Default for DemoOptions {
    fn default() -> Self {
        DemoOptions {
            seed: 2024,
            trials: None,
            window: None,
            parallel: false,
        }
    }
}

/// A report plus the human-readable account of it.
#[derive(Clone, Debug)]
pub struct DemoRun {
    pub report: Report,
    pub narrative: Vec<String>,
}

/// Independent stream `i` of the run's generator.
pub fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn map_trials<T: Send>(n: usize, parallel: bool, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn run_demo(name: &str, o: &DemoOptions) -> Result<DemoRun> {
    match name {
        "non-noetherian" => Ok(non_noetherian(o)),
        "bezout-gcd" => Ok(bezout_gcd(o)),
        "skew-ore" => Ok(skew_ore(o)),
        "correspondence" => Ok(correspondence(o)),
        _ => Err(CliError::usage(format!("unknown demo {name:?}; run `cjx list`"))),
    }
}

/// Contradiction between a decisive verdict on `a ∈ A·gens` and the
/// registered model, if any.
pub fn contradicts_model<R: SRing>(ext: &Extension<R>, verdict: &Verdict, a: &Ext<R>, gens: &[Ext<R>]) -> Option<String> {
    let claimed = verdict.as_bool()?;
    let model = ext.model()?;
    let answer = model.member(a, gens)?;
    (answer.member != claimed).then(|| {
        format!(
            "{a} ∈ A·[{}]: checker says {}, {} model says {}",
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; "),
            verdict.label(),
            model.name(),
            if answer.member { "Member" } else { "NonMember" }
        )
    })
}

fn non_noetherian(o: &DemoOptions) -> DemoRun {
    let lab = IdealLab::new(Extension::new(ZPolyRing::doubling()));
    let w = o.window.clone().unwrap_or_else(|| SearchWindow::rank_one(4));
    let n = o.trials.unwrap_or(10) as u32;
    let start = Instant::now();
    let chain = lab.ascending_chain_demo(n, &w);
    let per_link = start.elapsed() / (2 * n.max(1));
    let mut records = Vec::new();
    let mut narrative = vec![format!(
        "Over ℤ[x] with x ↦ 2x, I_m = A·φ_m⁻¹(x); in ℤ + ℤ[1/2][x]·x this is A·(x/2^m)."
    )];
    for link in &chain.links {
        let ins = inputs([
            ("lower", link.lower.to_string()),
            ("upper", link.upper.to_string()),
        ]);
        let w_text = w.to_string();
        records.push(CheckRecord::new(
            records.len(),
            "inclusion",
            ins.clone(),
            w_text.clone(),
            &link.inclusion,
            Some(Expectation::Member),
            per_link,
        ));
        records.push(CheckRecord::new(
            records.len(),
            "strictness",
            ins,
            w_text,
            &link.strictness,
            Some(Expectation::NonMember),
            per_link,
        ));
        let model = |a: &Ext<ZPolyRing>| lab.ext().render_model(a).unwrap_or_default();
        narrative.push(format!(
            "I_{} = A·({}) ⊊ I_{} = A·({}): inclusion {}, strictness {}",
            link.m,
            model(&link.lower),
            link.m + 1,
            model(&link.upper),
            link.inclusion.label(),
            link.strictness.detail()
        ));
    }
    narrative.push(if chain.certified() {
        format!("{n} strict inclusions certified: A is not noetherian.")
    } else {
        "the chain was not fully certified".to_string()
    });
    DemoRun {
        report: Report::new("non-noetherian", ZPolyRing::doubling().descriptor().to_string(), w.to_string(), o.seed, records),
        narrative,
    }
}

fn bezout_gcd(o: &DemoOptions) -> DemoRun {
    let lab = IdealLab::new(Extension::new(QPolyRing::squaring()));
    let e = lab.ext();
    let w = o.window.clone().unwrap_or_else(|| SearchWindow::rank_one(3));
    let n = o.trials.unwrap_or(100);
    let mut narrative = vec!["Over ℚ[x] with x ↦ x², A = ℚ[x^(1/2^∞)]; every two-generator ideal should be principal.".to_string()];

    let fixed = [e.parse_element("x - 1").unwrap(), e.parse_element("inv(1)[x - 1]").unwrap()];
    let expected = e.parse_element("inv(1)[x - 1]").unwrap();
    let start = Instant::now();
    let out = lab.principal_test(&fixed, &w);
    let mut first = CheckRecord::new(
        0,
        "principal",
        inputs([("I", "ideal{A}[x - 1; inv(1)[x - 1]]".to_string())]),
        w.to_string(),
        &out.verdict,
        Some(Expectation::Member),
        start.elapsed(),
    )
    .with_generator(out.generator.as_ref().map(|g| g.to_string()));
    if out.generator.as_ref() != Some(&expected) {
        first = first.fail(format!("expected generator {expected}"));
    }
    narrative.push(format!(
        "A·(x - 1) + A·(x^(1/2) - 1) = A·({})",
        out.generator.as_ref().and_then(|g| e.render_model(g)).unwrap_or_else(|| "?".into())
    ));

    let mut records = vec![first];
    records.extend(map_trials(n, o.parallel, |i| {
        let mut rng = trial_rng(o.seed, i);
        let gens = lab.sample_generators(&mut rng, 2, 2);
        let start = Instant::now();
        let out = lab.principal_test(&gens, &w);
        let text = format!("ideal{{A}}[{}; {}]", gens[0], gens[1]);
        CheckRecord::new(i + 1, "principal", inputs([("I", text)]), w.to_string(), &out.verdict, Some(Expectation::Member), start.elapsed())
            .with_generator(out.generator.map(|g| g.to_string()))
    }));
    let ok = records.iter().filter(|r| r.passed).count();
    narrative.push(format!("{ok}/{} ideals have a generator verified in both directions.", records.len()));
    DemoRun {
        report: Report::new("bezout-gcd", QPolyRing::squaring().descriptor().to_string(), w.to_string(), o.seed, records),
        narrative,
    }
}

fn random_ratfunc(rng: &mut impl Rng, level: u32) -> DyadicRatFunc {
    let num: Vec<i64> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(-3..=3)).collect();
    let den = loop {
        let d: Vec<i64> = (0..rng.random_range(1..=2)).map(|_| rng.random_range(-2..=2)).collect();
        let p = QPoly::from_i64(&d);
        if !p.is_zero() {
            break p;
        }
    };
    DyadicRatFunc::new(level, QPoly::from_i64(&num), den)
}

/// A random element of `D[t; σ]` whose coefficients live at `level`.
pub fn random_skew(rng: &mut impl Rng, level: u32) -> SkewPoly {
    let deg = rng.random_range(0..=2);
    SkewPoly::from_coeffs((0..=deg).map(|_| random_ratfunc(rng, level)).collect())
}

/// Builds `a, c ∈ K(x)[t; σ]`, recovers `a` from `ac` by right division in
/// `D[t; σ]`, and checks that a factor with a `√x` coefficient is detected.
pub fn left_division_trial(rng: &mut impl Rng) -> Verdict {
    let a = random_skew(rng, 0);
    let c = loop {
        let c = random_skew(rng, 0);
        if !c.is_zero() {
            break c;
        }
    };
    let ac = a.mul(&c);
    let root = DyadicRatFunc::from_puiseux(&"x^(1/2)".parse().expect("literal"));
    let k = rng.random_range(0..=2);
    let outside = a.add(&SkewPoly::term(root, k));
    let s0 = MonoidElement::identity(1);
    if !skew_in_r(&ac) {
        return Verdict::non_member(format!("ac = {ac} left R"));
    }
    match ac.right_divide(&c) {
        Some(q) if q == a && skew_in_r(&q) => {}
        other => return Verdict::non_member(format!("right division gave {other:?} instead of a = {a}")),
    }
    if skew_in_r(&outside.mul(&c)) {
        return Verdict::non_member(format!("({outside})·c landed in R although {outside} is not in R"));
    }
    Verdict::member(s0, format!("ac ∈ R forced a = {a} ∈ R; ({outside})·c ∉ R"))
}

fn skew_ore(o: &DemoOptions) -> DemoRun {
    let n = o.trials.unwrap_or(100);
    let mut narrative = vec!["In D[t; σ] with σ(x) = x², t·x^(1/2) = σ(x^(1/2))·t = x·t.".to_string()];
    let skew = |s: &str| -> SkewPoly { s.parse().expect("literal") };
    let fixed: [(&str, Verdict, Expectation, BTreeMap<String, String>); 3] = {
        let prod = skew("t").mul(&skew("x^(1/2)"));
        let s0 = MonoidElement::identity(1);
        let eq = if prod == skew("x*t") {
            Verdict::member(s0.clone(), format!("t·x^(1/2) = {prod}"))
        } else {
            Verdict::non_member(format!("t·x^(1/2) = {prod}"))
        };
        let in_r = |p: &SkewPoly| {
            if skew_in_r(p) {
                Verdict::member(s0.clone(), format!("{p} ∈ K(x)[t; σ]"))
            } else {
                Verdict::non_member(format!("{p} ∉ K(x)[t; σ]"))
            }
        };
        [
            ("skew-product", eq, Expectation::Member, inputs([("a", "t".into()), ("b", "x^(1/2)".into()), ("equals", "x*t".into())])),
            ("skew-in-r", in_r(&skew("x^(1/2)")), Expectation::NonMember, inputs([("p", "x^(1/2)".into())])),
            ("skew-in-r", in_r(&prod), Expectation::Member, inputs([("p", prod.to_string())])),
        ]
    };
    let mut records: Vec<CheckRecord> = fixed
        .into_iter()
        .enumerate()
        .map(|(i, (op, v, e, ins))| CheckRecord::new(i, op, ins, "-".into(), &v, Some(e), Default::default()))
        .collect();
    narrative.push("x^(1/2) ∉ R while t·x^(1/2) = x·t ∈ R.".into());
    let base = records.len();
    records.extend(map_trials(n, o.parallel, |i| {
        let mut rng = trial_rng(o.seed, i);
        let start = Instant::now();
        let v = left_division_trial(&mut rng);
        CheckRecord::new(base + i, "left-division", inputs([("trial", i.to_string())]), "-".into(), &v, Some(Expectation::Member), start.elapsed())
    }));
    let ok = records[base..].iter().filter(|r| r.passed).count();
    narrative.push(format!("{ok}/{n} constructed pairs: ac ∈ R with c ∈ R forces a ∈ R."));
    DemoRun {
        report: Report::new("skew-ore", "D[t;σ], σ(x)=x^2".into(), "-".into(), o.seed, records),
        narrative,
    }
}

/// Statistics from one random ideal in the correspondence check.
#[derive(Clone, Debug)]
pub struct CorrespondenceTrial {
    pub ideal: String,
    pub pairs: usize,
    /// Pairs where both the Δ-side and the direct verdict are decisive.
    pub decisive: usize,
    pub disagreements: Vec<String>,
    pub model_contradictions: Vec<String>,
    pub admissible: Verdict,
    pub containment: Verdict,
}

/// Compares `Δ(Γ(I))`-membership with direct membership in `I` on
/// `samples` elements (half of them multiples of a generator), then checks
/// admissibility and the containment `φ_t(X_k) ⊆ X_(t+k)` of `Γ(I)`.
pub fn correspondence_trial<R: SRing>(lab: &IdealLab<R>, w: &SearchWindow, samples: usize, rng: &mut ChaCha8Rng) -> CorrespondenceTrial {
    let e = lab.ext();
    let count = rng.random_range(1..=2);
    let gens = lab.sample_generators(rng, count, 2);
    let fam = lab.gamma_family(&gens, w);
    let mut t = CorrespondenceTrial {
        ideal: format!("ideal{{A}}[{}]", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ")),
        pairs: 0,
        decisive: 0,
        disagreements: Vec::new(),
        model_contradictions: Vec::new(),
        admissible: lab.admissible_check_family(&fam, 4, rng.random()),
        containment: lab.shift_containment(&fam),
    };
    for i in 0..samples {
        let mut a = lab.sample_generators(rng, 1, 3).remove(0);
        if i % 2 == 1 {
            let g = &gens[rng.random_range(0..gens.len())];
            a = e.mul(&a, g);
        }
        let delta = lab.delta_member(&a, &fam);
        let direct = lab.ext_ideal_member(&a, &gens, w);
        t.pairs += 1;
        for v in [&delta, &direct] {
            if let Some(c) = contradicts_model(e, v, &a, &gens) {
                t.model_contradictions.push(c);
            }
        }
        if let (Some(x), Some(y)) = (delta.as_bool(), direct.as_bool()) {
            t.decisive += 1;
            if x != y {
                t.disagreements.push(format!("{a}: Δ says {}, direct says {}", delta.label(), direct.label()));
            }
        }
    }
    t
}

fn correspondence(o: &DemoOptions) -> DemoRun {
    let lab = IdealLab::new(Extension::new(QPolyRing::squaring()));
    let w = o.window.clone().unwrap_or_else(|| SearchWindow::rank_one(6));
    let n = o.trials.unwrap_or(200);
    let samples = 20;
    let trials = map_trials(n, o.parallel, |i| {
        let start = Instant::now();
        let t = correspondence_trial(&lab, &w, samples, &mut trial_rng(o.seed, i));
        (t, start.elapsed())
    });
    let mut records = Vec::new();
    let (mut pairs, mut decisive, mut bad) = (0, 0, 0);
    let s0 = MonoidElement::identity(1);
    for (t, elapsed) in &trials {
        pairs += t.pairs;
        decisive += t.decisive;
        bad += t.disagreements.len() + t.model_contradictions.len();
        let agree = if t.disagreements.is_empty() && t.model_contradictions.is_empty() {
            Verdict::member(s0.clone(), format!("{}/{} pairs decisive, all agree", t.decisive, t.pairs))
        } else {
            let mut all = t.disagreements.clone();
            all.extend(t.model_contradictions.iter().cloned());
            Verdict::non_member(all.join("; "))
        };
        let ins = inputs([("I", t.ideal.clone())]);
        records.push(CheckRecord::new(records.len(), "delta-gamma", ins.clone(), w.to_string(), &agree, Some(Expectation::Member), *elapsed));
        records.push(CheckRecord::new(records.len(), "admissible", ins.clone(), w.to_string(), &t.admissible, Some(Expectation::Member), Default::default()));
        records.push(CheckRecord::new(records.len(), "shift-containment", ins, w.to_string(), &t.containment, Some(Expectation::Member), Default::default()));
    }
    let rate = if pairs == 0 { 1.0 } else { decisive as f64 / pairs as f64 };
    let rate_verdict = if rate >= 0.95 {
        Verdict::member(s0, format!("{decisive}/{pairs} decisive ({:.1}%)", 100.0 * rate))
    } else {
        Verdict::non_member(format!("only {decisive}/{pairs} decisive ({:.1}%)", 100.0 * rate))
    };
    records.push(CheckRecord::new(
        records.len(),
        "decisive-rate",
        inputs([("threshold", "0.95".into())]),
        w.to_string(),
        &rate_verdict,
        Some(Expectation::Member),
        Default::default(),
    ));
    let narrative = vec![
        format!("{n} random ideals of A over ℚ[x], x ↦ x², {samples} elements each, window {w}."),
        format!("{decisive}/{pairs} pairs decisive on both sides; {bad} disagreements."),
    ];
    DemoRun {
        report: Report::new("correspondence", QPolyRing::squaring().descriptor().to_string(), w.to_string(), o.seed, records),
        narrative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: usize) -> DemoOptions {
        DemoOptions {
            trials: Some(trials),
            ..Default::default()
        }
    }

    #[test]
    fn demos_pass_on_small_runs() {
        for (name, _) in DEMOS {
            let run = run_demo(name, &quick(5)).unwrap();
            assert!(run.report.passed, "{name}:\n{}", run.report.render());
        }
        assert!(run_demo("nope", &quick(1)).is_err());
    }

    #[test]
    fn chain_has_two_records_per_link() {
        let run = run_demo("non-noetherian", &DemoOptions::default()).unwrap();
        assert_eq!(run.report.checks.len(), 20);
        assert!(run.report.passed);
    }

    #[test]
    fn parallel_runs_match_sequential() {
        let seq = run_demo("bezout-gcd", &quick(8)).unwrap().report;
        let par = run_demo("bezout-gcd", &DemoOptions { parallel: true, ..quick(8) }).unwrap().report;
        let strip = |r: &Report| r.checks.iter().map(|c| (c.verdict.clone(), c.generator.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&seq), strip(&par));
    }
}
