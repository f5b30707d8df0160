//! Machine-readable records. The JSON layout is described in
//! `docs/report-schema.md`.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use cj_core::Verdict;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// What a check is expected to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    #[serde(alias = "Member")]
    Member,
    #[serde(alias = "NonMember", alias = "nonmember")]
    NonMember,
    #[serde(alias = "Unknown")]
    Unknown,
    /// Either `Member` or `NonMember`.
    #[serde(alias = "Decisive")]
    Decisive,
}

impl Expectation {
    pub fn accepts(self, verdict: &Verdict) -> bool {
        match self {
            Expectation::Member => verdict.is_member(),
            Expectation::NonMember => verdict.is_non_member(),
            Expectation::Unknown => !verdict.is_decisive(),
            Expectation::Decisive => verdict.is_decisive(),
        }
    }
}

impl std::str::FromStr for Expectation {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        match text.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "member" => Ok(Expectation::Member),
            "non-member" | "nonmember" => Ok(Expectation::NonMember),
            "unknown" => Ok(Expectation::Unknown),
            "decisive" => Ok(Expectation::Decisive),
            _ => Err(CliError::usage(format!(
                "unknown expectation {text:?} (member, non-member, unknown, decisive)"
            ))),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Member => "member",
            Expectation::NonMember => "non-member",
            Expectation::Unknown => "unknown",
            Expectation::Decisive => "decisive",
        })
    }
}

/// One checker invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub index: usize,
    pub op: String,
    pub inputs: BTreeMap<String, String>,
    pub window: String,
    pub verdict: String,
    pub witness: Option<String>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub expected: Option<Expectation>,
    pub passed: bool,
    pub elapsed_ms: f64,
}

impl CheckRecord {
    pub fn new(
        index: usize,
        op: &str,
        inputs: BTreeMap<String, String>,
        window: String,
        verdict: &Verdict,
        expected: Option<Expectation>,
        elapsed: Duration,
    ) -> Self {
        CheckRecord {
            index,
            op: op.to_string(),
            inputs,
            window,
            verdict: verdict.label().to_string(),
            witness: verdict.witness().map(|w| w.to_string()),
            detail: verdict.detail(),
            generator: None,
            expected,
            passed: expected.is_none_or(|e| e.accepts(verdict)),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        }
    }

    pub fn with_generator(mut self, g: Option<String>) -> Self {
        self.generator = g;
        self
    }

    /// Marks the record failed with a reason, keeping the verdict.
    pub fn fail(mut self, reason: impl Into<String>) -> Self {
        self.passed = false;
        self.detail = format!("{} [{}]", self.detail, reason.into());
        self
    }

    /// One line for terminal output.
    pub fn summary(&self) -> String {
        let mark = if self.passed { "ok  " } else { "FAIL" };
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{mark} #{:<3} {} {} -> {}", self.index, self.op, inputs.join(" "), self.verdict);
        if let Some(w) = &self.witness {
            line.push_str(&format!(" (s={w})"));
        }
        if let Some(g) = &self.generator {
            line.push_str(&format!(" generator {g}"));
        }
        if let Some(e) = self.expected {
            line.push_str(&format!(" [expected {e}]"));
        }
        line
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub tool: String,
    pub version: String,
    pub os: String,
    pub arch: String,
}

impl Default for Environment {
    fn default() -> Self {
        Environment {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
        }
    }
}

/// A run of one or more checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub ring: String,
    pub window: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub environment: Environment,
}

impl Report {
    pub fn new(name: &str, ring: String, window: String, seed: u64, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by_key(|c| c.index);
        Report {
            name: name.to_string(),
            ring,
            window,
            seed,
            passed: checks.iter().all(|c| c.passed),
            checks,
            environment: Environment::default(),
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Terminal rendering: one line per check and a total.
    pub fn render(&self) -> String {
        let mut out: Vec<String> = self.checks.iter().map(CheckRecord::summary).collect();
        out.push(format!(
            "{}: {} checks, {} failed -> {}",
            self.name,
            self.checks.len(),
            self.failures(),
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out.join("\n")
    }

    /// Process exit status: 0 when every expectation was met, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}
