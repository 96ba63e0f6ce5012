//! Command-line harness for the `qphys` library: scenario runners with unit-aware
//! configuration, validation and deterministic reports.

pub mod app;
pub mod config;
pub mod params;
pub mod report;
pub mod scenarios;
pub mod units;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::Context;
use qphys::io::Table;

use crate::config::ScenarioConfig;
use crate::report::RunReport;

pub use crate::scenarios::{find, Group, Scenario, CATALOG};

/// A finished run: the report, the optional time series and the wall-clock time.
#[derive(Debug)]
pub struct Execution {
    pub report: RunReport,
    pub series: Option<Table>,
    pub duration: Duration,
    pub written: Vec<PathBuf>,
}

/// Runs a validated configuration and writes its outputs when an output directory is set.
pub fn run(cfg: &ScenarioConfig) -> anyhow::Result<Execution> {
    let start = Instant::now();
    let name = cfg.scenario.name;
    let outcome = (cfg.scenario.run)(&cfg.params, cfg.seed).with_context(|| format!("scenario '{name}' failed"))?;
    let duration = start.elapsed();
    let pass = !outcome.checks.is_empty() && outcome.checks.iter().all(|c| c.pass);
    let report = RunReport {
        scenario: name.to_string(),
        seed: cfg.seed,
        params: cfg.params.echo(),
        headlines: outcome.headlines,
        checks: outcome.checks,
        notes: outcome.notes,
        data: outcome.data,
        pass,
    };
    let mut written = vec![];
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let path = dir.join(format!("{name}.report.json"));
        std::fs::write(&path, report.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
        written.push(path);
        if let Some(series) = &outcome.series {
            let path = dir.join(format!("{name}.csv"));
            let file = std::fs::File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
            series.write_csv(std::io::BufWriter::new(file))?;
            written.push(path);
        }
    }
    Ok(Execution { report, series: outcome.series, duration, written })
}

/// Every scenario with its parameter schema, as pretty JSON.
pub fn catalog_json() -> String {
    let mut s = serde_json::to_string_pretty(CATALOG).expect("catalog serializes");
    s.push('\n');
    s
}
