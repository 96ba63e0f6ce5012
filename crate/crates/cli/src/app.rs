//! Argument parsing and dispatch; exit codes are 0 pass, 1 fail or runtime error,
//! 2 usage or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::config::{self, Diagnostic, Format, Overrides, ScenarioConfig};
use crate::params::Kind;
use crate::scenarios::{Group, CATALOG};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qphys", version, about = "Quaternionic physics scenarios and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario
    Run(RunArgs),
    /// Check a configuration without running it
    Validate(RunArgs),
    /// List scenarios and their parameters
    List(ListArgs),
    /// Run a rotor/spinor transformation scenario
    Transform(GroupArgs),
    /// Run a rotating-frame mechanics scenario
    Mech(GroupArgs),
    /// Run a relativity scenario
    Rel(GroupArgs),
    /// Run a field identity check
    Field(GroupArgs),
}

#[derive(Debug, Args)]
struct Shared {
    /// TOML or JSON configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Random seed for scenarios that sample
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for the JSON report and CSV series
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Standard output format (text when omitted)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Parameter override, e.g. `--param t="50 yr"`; repeatable
    #[arg(long = "param", short = 'p', value_name = "KEY=VALUE")]
    params: Vec<String>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario name (overrides the configuration file)
    #[arg(long)]
    scenario: Option<String>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Scenario name within the group
    scenario: Option<String>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Only scenarios of this group
    #[arg(long, value_enum)]
    group: Option<Group>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::List(a) => list(&a, out),
        Command::Run(a) => run(a.scenario, a.shared, None, out, err),
        Command::Validate(a) => validate(a.scenario, a.shared, out, err),
        Command::Transform(a) => run(a.scenario, a.shared, Some(Group::Transform), out, err),
        Command::Mech(a) => run(a.scenario, a.shared, Some(Group::Mech), out, err),
        Command::Rel(a) => run(a.scenario, a.shared, Some(Group::Rel), out, err),
        Command::Field(a) => run(a.scenario, a.shared, Some(Group::Field), out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_FAIL
        }
    }
}

fn resolve(
    scenario: Option<String>,
    shared: Shared,
    group: Option<Group>,
) -> Result<ScenarioConfig, Vec<Diagnostic>> {
    let doc = match &shared.config {
        Some(path) => config::load(path).map_err(|d| vec![d])?,
        None => json!({}),
    };
    let ov = Overrides {
        scenario,
        seed: shared.seed,
        out_dir: shared.out_dir,
        format: shared.format,
        params: shared.params,
    };
    config::validate(&doc, &ov, group)
}

fn report_diagnostics(diags: &[Diagnostic], err: &mut dyn Write) -> anyhow::Result<i32> {
    for d in diags {
        writeln!(err, "error: {d}")?;
    }
    Ok(EXIT_USAGE)
}

fn run(
    scenario: Option<String>,
    shared: Shared,
    group: Option<Group>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<i32> {
    let cfg = match resolve(scenario, shared, group) {
        Ok(c) => c,
        Err(d) => return report_diagnostics(&d, err),
    };
    let exec = crate::run(&cfg)?;
    match cfg.format {
        Format::Json => out.write_all(exec.report.to_json().as_bytes())?,
        Format::Csv => match &exec.series {
            Some(t) => out.write_all(t.to_csv_string()?.as_bytes())?,
            None => out.write_all(exec.report.checks_csv()?.as_bytes())?,
        },
        Format::Text => out.write_all(exec.report.to_text().as_bytes())?,
    }
    for path in &exec.written {
        writeln!(err, "wrote {}", path.display())?;
    }
    writeln!(err, "{}: {} in {:.3} s", cfg.scenario.name, if exec.report.pass { "pass" } else { "fail" }, exec.duration.as_secs_f64())?;
    Ok(if exec.report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn validate(scenario: Option<String>, shared: Shared, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let json = shared.format == Some(Format::Json);
    match resolve(scenario, shared, None) {
        Ok(cfg) if json => {
            let v = json!({ "valid": true, "scenario": cfg.scenario.name, "seed": cfg.seed, "params": cfg.params.echo() });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            Ok(EXIT_PASS)
        }
        Ok(cfg) => {
            writeln!(out, "valid: scenario {} (seed {})", cfg.scenario.name, cfg.seed)?;
            for (k, v) in cfg.params.echo() {
                writeln!(out, "  {k} = {v}")?;
            }
            Ok(EXIT_PASS)
        }
        Err(diags) if json => {
            let list: Vec<_> = diags.iter().map(|d| json!({ "path": d.path, "message": d.message })).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "valid": false, "diagnostics": list }))?)?;
            Ok(EXIT_USAGE)
        }
        Err(diags) => report_diagnostics(&diags, err),
    }
}

fn list(a: &ListArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let chosen = CATALOG.iter().filter(|s| a.group.is_none_or(|g| s.group == g));
    match a.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: Vec<_> = chosen.collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(["name", "group", "summary"])?;
            for s in chosen {
                w.write_record([s.name, s.group.name(), s.summary])?;
            }
            out.write_all(&w.into_inner()?)?;
        }
        Format::Text => {
            for s in chosen {
                writeln!(out, "{:<24} {:<10} {}", s.name, s.group.name(), s.summary)?;
                for p in s.params {
                    let kind = match p.kind {
                        Kind::Quantity { unit: "1", .. } => "number".to_string(),
                        Kind::Quantity { unit, .. } => format!("quantity [{unit}]"),
                        Kind::Integer { min, max } => format!("integer {min}..={max}"),
                        Kind::Choice { options } => format!("one of {}", options.join("|")),
                    };
                    writeln!(out, "    {:<12} {:<28} default {:<12} {}", p.name, kind, p.default, p.doc)?;
                }
            }
        }
    }
    Ok(EXIT_PASS)
}
