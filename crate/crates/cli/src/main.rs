use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cj_core::AnyRing;
use cjx::checks::{eval, run_check, CheckSpec, Settings, CHECKS};
use cjx::demo::{run_demo, DemoOptions, DEMOS};
use cjx::scenario::{parse_window, Overrides, Scenario};
use cjx::suites::{run_suite, SuiteOptions, SUITES};
use cjx::{CliError, Expectation, Report, Result};

const DEFAULT_RING: &str = "QPoly{1,2}";
const RINGS: &[(&str, &str)] = &[
    ("QPoly{c,d}", "ℚ[x] with x ↦ c·x^d; model registered for {1,2}"),
    ("ZPoly{c,d}", "ℤ[x] with x ↦ c·x^d; model registered for {2,1}"),
];

/// Exact computations in Cohn-Jordan extensions of polynomial rings.
#[derive(Debug, Parser)]
#[command(name = "cjx", version)]
struct Cli {
    /// Base ring with its endomorphism, e.g. "QPoly{1,2}" or "ZPoly{c=2,d=1}".
    #[arg(long, global = true)]
    ring: Option<String>,

    /// Search window: a bound on s, optionally followed by ",margin".
    #[arg(long, global = true)]
    window: Option<String>,

    /// Unchanged closure steps before heuristic stabilization.
    #[arg(long, global = true)]
    margin: Option<usize>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true)]
    trials: Option<u32>,

    /// Machine-readable output only.
    #[arg(long, global = true)]
    json: bool,

    /// Run independent checks and trials concurrently.
    #[arg(long, global = true)]
    parallel: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an element of A, and its model image.
    Eval { expr: String },
    /// Run one named check with key=value arguments.
    Check {
        name: String,
        args: Vec<String>,
        /// member, non-member, unknown or decisive.
        #[arg(long)]
        expect: Option<Expectation>,
    },
    /// Run a built-in demo or a .cjx scenario file.
    Demo { name: String },
    /// Randomized property suites.
    Proptest {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Available demos, checks, suites, rings and scenario files.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(c) = e.caret() {
                eprintln!("{c}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Eval { expr } => {
            let out = eval(&ring(cli)?, expr)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
            } else {
                println!("{}", out.normal_form);
                if let Some(m) = &out.model {
                    println!("model: {m}");
                }
            }
            Ok(0)
        }
        Command::Check { name, args, expect } => {
            let mut spec = CheckSpec::new(name).with_words(args.iter().map(String::as_str))?;
            if let Some(e) = spec.args.remove("expect") {
                spec.expect = Some(e.parse()?);
            }
            if expect.is_some() {
                spec.expect = *expect;
            }
            let settings = Settings {
                ring: ring(cli)?,
                window: parse_window(cli.window.as_deref().unwrap_or("4"), cli.margin)?,
                seed: cli.seed.unwrap_or(0),
            };
            let record = run_check(0, &spec, &settings)?;
            if !cli.json {
                eprintln!("{}", record.summary());
            }
            println!("{}", serde_json::to_string_pretty(&record).expect("serializes"));
            Ok(if record.passed { 0 } else { 1 })
        }
        Command::Demo { name } => {
            let report = if name.ends_with(".cjx") || Path::new(name).is_file() {
                let overrides = Overrides {
                    ring: cli.ring.clone(),
                    window: cli.window.clone(),
                    margin: cli.margin,
                    seed: cli.seed,
                };
                Scenario::load(Path::new(name))?.run(&overrides, cli.parallel)?
            } else {
                if cli.ring.is_some() {
                    return Err(CliError::usage("built-in demos use a fixed ring; drop --ring"));
                }
                let mut o = DemoOptions {
                    trials: cli.trials.map(|t| t as usize),
                    parallel: cli.parallel,
                    ..Default::default()
                };
                if let Some(s) = cli.seed {
                    o.seed = s;
                }
                if let Some(w) = &cli.window {
                    o.window = Some(parse_window(w, cli.margin)?);
                }
                let run = run_demo(name, &o)?;
                if !cli.json {
                    for line in &run.narrative {
                        eprintln!("{line}");
                    }
                }
                run.report
            };
            Ok(emit(cli, &report))
        }
        Command::Proptest { suite } => {
            let opts = SuiteOptions {
                ring: ring(cli)?,
                trials: cli.trials.unwrap_or(100),
                window: parse_window(cli.window.as_deref().unwrap_or("3"), cli.margin)?,
                seed: cli.seed.unwrap_or(0),
            };
            let report = run_suite(suite, &opts)?;
            Ok(emit(cli, &report))
        }
        Command::List => {
            list(cli.json);
            Ok(0)
        }
    }
}

fn ring(cli: &Cli) -> Result<AnyRing> {
    Ok(cli.ring.as_deref().unwrap_or(DEFAULT_RING).parse()?)
}

/// JSON on stdout; the human table on stderr unless `--json`.
fn emit(cli: &Cli, report: &Report) -> u8 {
    if !cli.json {
        eprintln!("{}", report.render());
    }
    println!("{}", report.to_json());
    report.exit_code() as u8
}

fn scenario_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir("scenarios")
        .into_iter()
        .flatten()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cjx"))
        .collect();
    files.sort();
    files
}

fn list(json: bool) {
    let pairs = |xs: &[(&str, &str)]| -> Vec<(String, String)> { xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect() };
    let checks: Vec<(String, String)> = CHECKS
        .iter()
        .map(|(n, sig, d)| (format!("{n} {sig}"), d.to_string()))
        .collect();
    let files: Vec<(String, String)> = scenario_files()
        .into_iter()
        .map(|p| {
            let name = Scenario::load(&p).map(|s| s.name).unwrap_or_else(|e| format!("unreadable: {e}"));
            (p.display().to_string(), name)
        })
        .collect();
    let sections = [
        ("demos", pairs(DEMOS)),
        ("checks", checks),
        ("suites", pairs(SUITES)),
        ("rings", pairs(RINGS)),
        ("scenarios", files),
    ];
    if json {
        let value: serde_json::Map<String, serde_json::Value> = sections
            .iter()
            .map(|(k, v)| {
                let entries = v
                    .iter()
                    .map(|(n, d)| serde_json::json!({ "name": n, "description": d }))
                    .collect();
                (k.to_string(), serde_json::Value::Array(entries))
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
        return;
    }
    for (title, entries) in &sections {
        println!("{title}:");
        let width = entries.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0);
        for (n, d) in entries {
            println!("  {n:width$}  {d}");
        }
    }
}
