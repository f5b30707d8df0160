//! `.cjx` scenario files: TOML with top-level run settings and one
//! `[[check]]` table per check.
//!
//! ```toml
//! name = "closure"
//! ring = "QPoly{1,2}"
//! window = "4"
//! seed = 7
//!
//! [[check]]
//! op = "closure-member"
//! r = "1"
//! M = "ideal{R}[x]"
//! expect = "non-member"
//! ```
//!
//! A check may override `ring` and `window`; all other keys are arguments.

use std::collections::BTreeMap;
use std::path::Path;

use cj_core::ideals::SearchWindow;
use cj_core::AnyRing;
use rayon::prelude::*;
use serde::Deserialize;

use crate::checks::{run_check, CheckSpec, Settings};
use crate::error::{CliError, Result};
use crate::report::{Expectation, Report};

fn default_window() -> String {
    "4".into()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub ring: String,
    #[serde(default = "default_window")]
    pub window: String,
    #[serde(default)]
    pub margin: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, rename = "check")]
    pub checks: Vec<ScenarioCheck>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ScenarioCheck {
    pub op: String,
    #[serde(default)]
    pub expect: Option<Expectation>,
    #[serde(default)]
    pub ring: Option<String>,
    #[serde(default)]
    pub window: Option<String>,
    #[serde(flatten)]
    pub args: BTreeMap<String, String>,
}

/// Command-line overrides applied on top of a scenario.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub ring: Option<String>,
    pub window: Option<String>,
    pub margin: Option<usize>,
    pub seed: Option<u64>,
}

pub fn parse_window(text: &str, margin: Option<usize>) -> Result<SearchWindow> {
    let w: SearchWindow = text.parse()?;
    match margin {
        Some(m) => Ok(w.with_margin(m)?),
        None => Ok(w),
    }
}

/// Resolved run settings and one `(spec, settings)` pair per check.
type Plan = (AnyRing, SearchWindow, u64, Vec<(CheckSpec, Settings)>);

impl Scenario {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Scenario {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Resolves every check's settings first, so that malformed input is
    /// reported before anything runs.
    fn plan(&self, o: &Overrides) -> Result<Plan> {
        let ring: AnyRing = o.ring.as_deref().unwrap_or(&self.ring).parse()?;
        let margin = o.margin.or(self.margin);
        let window = parse_window(o.window.as_deref().unwrap_or(&self.window), margin)?;
        let seed = o.seed.unwrap_or(self.seed);
        let plan = self
            .checks
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let settings = Settings {
                    ring: match &c.ring {
                        Some(r) => r.parse()?,
                        None => ring.clone(),
                    },
                    window: match (&c.window, &o.window) {
                        (Some(w), None) => parse_window(w, margin)?,
                        _ => window.clone(),
                    },
                    seed: seed.wrapping_add(i as u64),
                };
                let spec = CheckSpec {
                    op: c.op.clone(),
                    args: c.args.clone(),
                    expect: c.expect,
                };
                Ok((spec, settings))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((ring, window, seed, plan))
    }

    /// Runs every check; with `parallel`, checks run concurrently and the
    /// report keeps file order.
    pub fn run(&self, o: &Overrides, parallel: bool) -> Result<Report> {
        let (ring, window, seed, plan) = self.plan(o)?;
        let run = |(i, (spec, settings)): (usize, &(CheckSpec, Settings))| run_check(i, spec, settings);
        let records = if parallel {
            plan.par_iter().enumerate().map(run).collect::<Result<Vec<_>>>()?
        } else {
            plan.iter().enumerate().map(run).collect::<Result<Vec<_>>>()?
        };
        Ok(Report::new(&self.name, ring.to_string(), window.to_string(), seed, records))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = r#"
name = "sample"
ring = "QPoly{1,2}"
window = "3"
seed = 5

[[check]]
op = "closure-member"
r = "1"
M = "ideal{R}[x]"
expect = "non-member"

[[check]]
op = "chain"
ring = "ZPoly{2,1}"
n = "2"
expect = "member"
"#;

    #[test]
    fn parses_and_runs() {
        let s = Scenario::parse(TEXT, "inline").unwrap();
        assert_eq!(s.checks.len(), 2);
        assert_eq!(s.checks[1].ring.as_deref(), Some("ZPoly{2,1}"));
        let seq = s.run(&Overrides::default(), false).unwrap();
        assert!(seq.passed, "{}", seq.render());
        let par = s.run(&Overrides::default(), true).unwrap();
        let strip = |r: &Report| {
            let mut r = r.clone();
            r.checks.iter_mut().for_each(|c| c.elapsed_ms = 0.0);
            r.to_json()
        };
        assert_eq!(strip(&seq), strip(&par));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Scenario::parse("name = 1", "x").is_err());
        assert!(Scenario::parse("name = \"a\"\nring = \"QPoly{1,2}\"\ncolour = 3", "x").is_err());
        let bad_ring = Scenario::parse("name = \"a\"\nring = \"Nope{1}\"", "x").unwrap();
        assert!(bad_ring.run(&Overrides::default(), false).is_err());
    }
}
