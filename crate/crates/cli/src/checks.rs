//! Named checks: parse text arguments, dispatch to [`IdealLab`], and wrap
//! the verdict in a [`CheckRecord`].

use std::collections::BTreeMap;
use std::time::Instant;

use cj_core::ideals::{parse_ideal, FinGenLeftIdeal, IdealLab, SearchWindow};
use cj_core::models::{skew_in_r, SkewPoly};
use cj_core::{AnyRing, Ext, Extension, MonoidElement, SRing, Verdict};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::report::{CheckRecord, Expectation};

/// Name, arguments (optional ones in brackets), and a short description.
pub const CHECKS: &[(&str, &str, &str)] = &[
    ("ext-member", "a I", "a ∈ I for an ideal I of A"),
    ("gamma-member", "r I s", "r ∈ L_s = φ_s(I) ∩ R"),
    ("delta-member", "a I", "a ∈ Δ(Γ(I)), read off the windowed family"),
    ("closure-member", "r M", "r ∈ A·M ∩ R for an ideal M of R"),
    ("is-closed", "M", "M = A·M ∩ R"),
    ("admissible", "I [samples]", "Γ(I) is admissible on the window"),
    ("stability", "I", "some k has φ_k(I) = A·(φ_k(I) ∩ R)"),
    ("principal", "I", "I is principal, with a verified generator"),
    ("chain", "n", "I_m = A·φ_m⁻¹(x) strictly ascends for m < n"),
    ("skew-product", "a b equals", "a·b = equals in D[t; σ]"),
    ("skew-in-r", "p", "p has all coefficients in K(x)"),
];

/// A check request: operation name, text arguments, optional expectation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSpec {
    pub op: String,
    pub args: BTreeMap<String, String>,
    pub expect: Option<Expectation>,
}

impl CheckSpec {
    pub fn new(op: &str) -> Self {
        CheckSpec {
            op: op.to_string(),
            ..Default::default()
        }
    }

    pub fn arg(mut self, key: &str, value: &str) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }

    pub fn expect(mut self, e: Expectation) -> Self {
        self.expect = Some(e);
        self
    }

    /// Parses `key=value` words; surrounding quotes on the value are dropped.
    pub fn with_words<'a>(mut self, words: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("expected key=value, got {w:?}")))?;
            let v = v.trim();
            let v = v
                .strip_prefix('"')
                .and_then(|x| x.strip_suffix('"'))
                .unwrap_or(v);
            self.args.insert(k.trim().to_string(), v.to_string());
        }
        Ok(self)
    }
}

/// Ring, window and seed shared by the checks of one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub ring: AnyRing,
    pub window: SearchWindow,
    pub seed: u64,
}

struct Args<'a> {
    op: &'a str,
    map: &'a BTreeMap<String, String>,
}

impl Args<'_> {
    fn get(&self, key: &str) -> Result<&str> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::usage(format!("check {} needs {key}=...", self.op)))
    }

    fn opt(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let text = self.get(key)?;
        text.trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{key}={text:?} is not a valid number")))
    }
}

fn expected_keys(op: &str) -> Result<Vec<&'static str>> {
    let (_, sig, _) = CHECKS
        .iter()
        .find(|(name, _, _)| *name == op)
        .ok_or_else(|| CliError::usage(format!("unknown check {op:?}; run `cjx list`")))?;
    Ok(sig
        .split_whitespace()
        .map(|k| k.trim_matches(|c| c == '[' || c == ']'))
        .collect())
}

fn ideal<R: SRing>(ext: &Extension<R>, text: &str) -> Result<FinGenLeftIdeal<R::Elem>> {
    parse_ideal(ext, text).map_err(|e| CliError::parse(text, e))
}

fn ext_elem<R: SRing>(ext: &Extension<R>, text: &str) -> Result<Ext<R>> {
    ext.parse_element(text).map_err(|e| CliError::parse(text, e))
}

fn base_elem<R: SRing>(ring: &R, text: &str) -> Result<R::Elem> {
    ring.parse_element(text).map_err(|e| CliError::parse(text, e))
}

fn skew(text: &str) -> Result<SkewPoly> {
    text.parse().map_err(|e| CliError::parse(text, e))
}

/// Runs one check and records how it compares with the expectation.
pub fn run_check(index: usize, spec: &CheckSpec, settings: &Settings) -> Result<CheckRecord> {
    let allowed = expected_keys(&spec.op)?;
    if let Some(extra) = spec.args.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::usage(format!(
            "check {} does not take {extra}=...; it takes {}",
            spec.op,
            allowed.join(", ")
        )));
    }
    let args = Args {
        op: &spec.op,
        map: &spec.args,
    };
    let start = Instant::now();
    let (verdict, generator) = match &settings.ring {
        AnyRing::Q(r) => dispatch(&IdealLab::new(Extension::new(r.clone())), &args, settings)?,
        AnyRing::Z(r) => dispatch(&IdealLab::new(Extension::new(r.clone())), &args, settings)?,
    };
    let record = CheckRecord::new(
        index,
        &spec.op,
        spec.args.clone(),
        settings.window.to_string(),
        &verdict,
        spec.expect,
        start.elapsed(),
    );
    Ok(record.with_generator(generator))
}

fn dispatch<R: SRing>(lab: &IdealLab<R>, args: &Args, settings: &Settings) -> Result<(Verdict, Option<String>)> {
    let ext = lab.ext();
    let w = &settings.window;
    let ideal_a = |key: &str| -> Result<Vec<Ext<R>>> { Ok(ideal(ext, args.get(key)?)?.to_ext(ext)) };
    let ideal_r = |key: &str| -> Result<Vec<R::Elem>> {
        let text = args.get(key)?;
        ideal(ext, text)?
            .base_gens()
            .map(<[R::Elem]>::to_vec)
            .ok_or_else(|| CliError::usage(format!("{key} must be an ideal of R, written ideal{{R}}[...]")))
    };
    let rank = ext.rank();
    let verdict = match args.op {
        "ext-member" => lab.ext_ideal_member(&ext_elem(ext, args.get("a")?)?, &ideal_a("I")?, w),
        "gamma-member" => {
            let s_text = args.get("s")?;
            let s: MonoidElement = s_text.parse().map_err(|e| CliError::parse(s_text, e))?;
            lab.gamma_member(&base_elem(lab.ring(), args.get("r")?)?, &ideal_a("I")?, &s, w)
        }
        "delta-member" => {
            let fam = lab.gamma_family(&ideal_a("I")?, w);
            lab.delta_member(&ext_elem(ext, args.get("a")?)?, &fam)
        }
        "closure-member" => lab.closure_member(&base_elem(lab.ring(), args.get("r")?)?, &ideal_r("M")?, w),
        "is-closed" => lab.is_closed(&ideal_r("M")?, w),
        "admissible" => {
            let samples = if args.opt("samples").is_some() { args.number("samples")? } else { 10 };
            lab.admissible_check(&ideal_a("I")?, w, samples, settings.seed)
        }
        "stability" => lab.stability_check(&ideal_a("I")?, w),
        "principal" => {
            let out = lab.principal_test(&ideal_a("I")?, w);
            return Ok((out.verdict, out.generator.map(|g| g.to_string())));
        }
        "chain" => {
            let n: u32 = args.number("n")?;
            let report = lab.ascending_chain_demo(n, w);
            if report.certified() {
                Verdict::member(
                    MonoidElement::identity(rank),
                    format!("{n} strict inclusions certified"),
                )
            } else if let Some(l) = report
                .links
                .iter()
                .find(|l| l.inclusion.is_non_member() || l.strictness.is_member())
            {
                Verdict::non_member(format!("the chain is not strictly ascending at m = {}", l.m))
            } else {
                Verdict::Unknown {
                    window_exhausted: w.bound().clone(),
                }
            }
        }
        "skew-product" => {
            let p = skew(args.get("a")?)?.mul(&skew(args.get("b")?)?);
            let expected = skew(args.get("equals")?)?;
            if p == expected {
                Verdict::member(MonoidElement::identity(rank), format!("product is {p}"))
            } else {
                Verdict::non_member(format!("product is {p}, not {expected}"))
            }
        }
        "skew-in-r" => {
            let p = skew(args.get("p")?)?;
            if skew_in_r(&p) {
                Verdict::member(MonoidElement::identity(rank), format!("{p} has coefficients in K(x)"))
            } else {
                Verdict::non_member(format!("{p} has a coefficient outside K(x)"))
            }
        }
        other => return Err(CliError::usage(format!("unknown check {other:?}"))),
    };
    Ok((verdict, None))
}

/// Normal form of an element of `A` and, when a model is registered, its
/// image there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalOutput {
    pub ring: String,
    pub input: String,
    pub normal_form: String,
    pub model: Option<String>,
}

pub fn eval(ring: &AnyRing, text: &str) -> Result<EvalOutput> {
    fn go<R: SRing>(ring: &R, label: String, text: &str) -> Result<EvalOutput> {
        let ext = Extension::new(ring.clone());
        let a = ext_elem(&ext, text)?;
        Ok(EvalOutput {
            ring: label,
            input: text.to_string(),
            normal_form: a.to_string(),
            model: ext.render_model(&a),
        })
    }
    match ring {
        AnyRing::Q(r) => go(r, ring.to_string(), text),
        AnyRing::Z(r) => go(r, ring.to_string(), text),
    }
}
