use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathatlas::harness::{run_suite, scenario, Report, Scenario, SuiteConfig, SUITES};
use pathatlas::Error;

/// Path-space atlases: invariant suites and scenario runs.
#[derive(Parser)]
#[command(name = "pathatlas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite on seeded random instances.
    Validate {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Overrides the suite tolerance where it has one.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-express a path in the scenario's target chart system and back.
    Transition(ScenarioArgs),
    /// Frames, transport and holonomy of a bundle along the scenario path.
    Transport(ScenarioArgs),
    /// Openness radius of the scenario path.
    Margin(ScenarioArgs),
    /// Reconstruct the scenario path from its representation.
    Reconstruct(ScenarioArgs),
    /// List the registered suites.
    Suites,
    /// Write a builtin scenario file.
    Example {
        /// One of the names printed when this is omitted.
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &PathBuf) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Scenario::from_json(&text).map_err(|e| Failure::Usage(format!("invalid scenario {}: {e}", path.display())))
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), Failure> {
    write_out(&report.to_json_lines(true), out)
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let (report, out) = match cli.command {
        Command::Validate { suite, seed, count, tol, out } => {
            if suite != "all" && pathatlas::harness::find(&suite).is_none() {
                return Err(Failure::Usage(format!("unknown suite `{suite}`")));
            }
            let cfg = SuiteConfig { tol, ..SuiteConfig::new(seed, count) };
            (run_suite(&suite, &cfg)?, out)
        }
        Command::Transition(a) => (scenario::cmd_transition(&load(&a.scenario)?, a.tol)?, a.out),
        Command::Transport(a) => (scenario::cmd_transport(&load(&a.scenario)?)?, a.out),
        Command::Margin(a) => (scenario::cmd_margin(&load(&a.scenario)?)?, a.out),
        Command::Reconstruct(a) => (scenario::cmd_reconstruct(&load(&a.scenario)?)?, a.out),
        Command::Suites => {
            for s in SUITES {
                println!("{:<26} {} (count = {})", s.name, s.anchor, s.unit);
            }
            return Ok(Report::default());
        }
        Command::Example { name: None, .. } => {
            for n in scenario::EXAMPLES {
                println!("{n}");
            }
            return Ok(Report::default());
        }
        Command::Example { name: Some(name), out } => {
            if !scenario::EXAMPLES.contains(&name.as_str()) {
                return Err(Failure::Usage(format!("unknown example `{name}`")));
            }
            let text = serde_json::to_string_pretty(&scenario::example(&name)?).expect("scenario serializes") + "\n";
            write_out(&text, out.as_ref())?;
            return Ok(Report::default());
        }
    };
    emit(&report, out.as_ref())?;
    Ok(report)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(r) if r.has_failures() => ExitCode::from(EXIT_FAIL),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", serde_json::json!({ "error": "usage", "message": msg }));
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            let (kind, code) = if e.is_domain() { ("domain", EXIT_DOMAIN) } else { ("input", EXIT_USAGE) };
            let mut obj = serde_json::json!({ "error": kind, "message": e.to_string() });
            if let Error::CoverViolation { time, .. } | Error::EscapesChart { time, .. } | Error::CoverFailure { time } = &e {
                obj["time"] = serde_json::json!(time);
            }
            eprintln!("{obj}");
            ExitCode::from(code)
        }
    }
}
