//! Run reports and their serialized forms.

use std::collections::BTreeMap;

use qphys::io::Table;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum HeadlineValue {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Headline {
    pub name: String,
    pub value: HeadlineValue,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub unit: String,
}

impl Headline {
    pub fn number(name: &str, value: f64, unit: &str) -> Self {
        Self { name: name.into(), value: HeadlineValue::Number(value), unit: unit.into() }
    }

    pub fn text(name: &str, value: impl Into<String>) -> Self {
        Self { name: name.into(), value: HeadlineValue::Text(value.into()), unit: String::new() }
    }
}

/// One pass/fail test. Numeric checks pass when `value <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl CheckResult {
    pub fn within(name: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value: Some(value), tolerance: Some(tolerance), pass: value <= tolerance }
    }

    pub fn flag(name: &str, pass: bool) -> Self {
        Self { name: name.into(), value: None, tolerance: None, pass }
    }
}

/// What a scenario hands back to the runner.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub headlines: Vec<Headline>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub data: BTreeMap<String, Value>,
    pub series: Option<Table>,
}

impl Outcome {
    pub fn headline(&mut self, name: &str, value: f64, unit: &str) {
        self.headlines.push(Headline::number(name, value, unit));
    }

    pub fn headline_text(&mut self, name: &str, value: impl Into<String>) {
        self.headlines.push(Headline::text(name, value));
    }

    pub fn within(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(CheckResult::within(name, value, tolerance));
    }

    pub fn flag(&mut self, name: &str, pass: bool) {
        self.checks.push(CheckResult::flag(name, pass));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Serialized result of one run. Deliberately free of timing so that identical
/// configurations and seeds give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
    pub headlines: Vec<Headline>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    pub pass: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `name,value,tolerance,pass` rows, one per check.
    pub fn checks_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(["name", "value", "tolerance", "pass"])?;
        for c in &self.checks {
            let num = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([c.name.clone(), num(c.value), num(c.tolerance), c.pass.to_string()])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {} (seed {}): {}\n", self.scenario, self.seed, verdict(self.pass));
        for h in &self.headlines {
            let v = match &h.value {
                HeadlineValue::Number(x) if x.fract() == 0.0 && x.abs() < 1e15 => format!("{x}"),
                HeadlineValue::Number(x) => format!("{x:.6e}"),
                HeadlineValue::Text(t) => t.clone(),
            };
            s += &format!("  {:<32} {} {}\n", h.name, v, h.unit);
        }
        for c in &self.checks {
            let detail = match (c.value, c.tolerance) {
                (Some(v), Some(t)) => format!("{v:.3e} (tolerance {t:.1e})"),
                _ => String::new(),
            };
            s += &format!("  [{}] {:<40} {}\n", verdict(c.pass), c.name, detail);
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        s
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_fails_report_text() {
        let mut o = Outcome::default();
        o.within("gap", 2.0, 1.0);
        o.headline("x", 1.5, "s");
        let r = RunReport {
            scenario: "demo".into(),
            seed: 3,
            params: BTreeMap::new(),
            headlines: o.headlines,
            checks: o.checks.clone(),
            notes: vec![],
            data: BTreeMap::new(),
            pass: o.checks.iter().all(|c| c.pass),
        };
        assert!(!r.pass);
        assert!(r.to_text().contains("[FAIL] gap"));
        assert!(r.checks_csv().unwrap().starts_with("name,value,tolerance,pass\ngap,2,1,false"));
        assert!(!r.to_json().contains("data"));
    }
}
