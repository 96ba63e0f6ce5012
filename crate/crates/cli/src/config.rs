//! Scenario configuration: file loading, command-line overrides and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::params::{nearest, Params};
use crate::scenarios::{find, Group, Scenario, CATALOG};

pub const TOP_LEVEL_KEYS: [&str; 5] = ["scenario", "seed", "out_dir", "format", "params"];
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> Option<Format> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Some(Format::Text),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// One validation problem, located by a dotted path such as `params.v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Values given on the command line; they take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub scenario: Option<String>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    /// `key=value` pairs.
    pub params: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: &'static Scenario,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
    pub params: Params,
}

/// Reads a TOML or JSON document, chosen by file extension.
pub fn load(path: &Path) -> Result<Value, Diagnostic> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new("config", format!("cannot read {}: {e}", path.display())))?;
    parse(&text, path.extension().and_then(|e| e.to_str()).unwrap_or(""))
}

pub fn parse(text: &str, extension: &str) -> Result<Value, Diagnostic> {
    let doc: Value = match extension.to_ascii_lowercase().as_str() {
        "toml" => toml::from_str(text).map_err(|e| Diagnostic::new("config", format!("invalid TOML: {e}")))?,
        "json" => serde_json::from_str(text).map_err(|e| Diagnostic::new("config", format!("invalid JSON: {e}")))?,
        other => {
            return Err(Diagnostic::new(
                "config",
                format!("unsupported config extension '{other}' (use .toml or .json)"),
            ))
        }
    };
    if !doc.is_object() {
        return Err(Diagnostic::new("config", "the document must be a table/object"));
    }
    Ok(doc)
}

fn suggestion(key: &str, candidates: &[String]) -> String {
    match nearest(key, candidates.iter().map(String::as_str)) {
        Some(s) => format!("; did you mean '{s}'?"),
        None => String::new(),
    }
}

/// Checks a document plus overrides against the schema of its scenario and returns
/// every problem found, not only the first.
pub fn validate(doc: &Value, ov: &Overrides, group: Option<Group>) -> Result<ScenarioConfig, Vec<Diagnostic>> {
    let empty = Map::new();
    let obj = doc.as_object().unwrap_or(&empty);
    let mut diags = vec![];

    let scenario_name = ov
        .scenario
        .clone()
        .or_else(|| obj.get("scenario").and_then(Value::as_str).map(str::to_string));
    if ov.scenario.is_none() {
        if let Some(v) = obj.get("scenario").filter(|v| !v.is_string()) {
            diags.push(Diagnostic::new("scenario", format!("expected a string, got {v}")));
        }
    }
    let scenario = match scenario_name.as_deref() {
        None => {
            diags.push(Diagnostic::new("scenario", "required (see `qphys list`)"));
            None
        }
        Some(name) => match find(name) {
            Some(s) => {
                if let Some(g) = group.filter(|g| *g != s.group) {
                    let options: Vec<&str> =
                        CATALOG.iter().filter(|c| c.group == g).map(|c| c.name).collect();
                    diags.push(Diagnostic::new(
                        "scenario",
                        format!("'{name}' is not a {} scenario (choose from {})", g.name(), options.join(", ")),
                    ));
                }
                Some(s)
            }
            None => {
                let names: Vec<String> = CATALOG.iter().map(|s| s.name.to_string()).collect();
                diags.push(Diagnostic::new("scenario", format!("unknown scenario '{name}'{}", suggestion(name, &names))));
                None
            }
        },
    };

    // top-level keys; parameter names are suggested in their proper place
    let mut top: Vec<String> = TOP_LEVEL_KEYS.iter().map(|s| s.to_string()).collect();
    if let Some(s) = scenario {
        top.extend(s.params.iter().map(|p| format!("params.{}", p.name)));
    }
    for key in obj.keys().filter(|k| !TOP_LEVEL_KEYS.contains(&k.as_str())) {
        let hint = if scenario.is_some_and(|s| s.params.iter().any(|p| p.name == key)) {
            format!("; did you mean 'params.{key}'?")
        } else {
            suggestion(key, &top)
        };
        diags.push(Diagnostic::new(key.clone(), format!("unknown key{hint}")));
    }

    let seed = match (ov.seed, obj.get("seed")) {
        (Some(s), _) => s,
        (None, None) => DEFAULT_SEED,
        (None, Some(v)) => v.as_u64().unwrap_or_else(|| {
            diags.push(Diagnostic::new("seed", format!("expected a nonnegative integer, got {v}")));
            DEFAULT_SEED
        }),
    };
    let out_dir = ov.out_dir.clone().or_else(|| match obj.get("out_dir") {
        None => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(v) => {
            diags.push(Diagnostic::new("out_dir", format!("expected a path string, got {v}")));
            None
        }
    });
    let format = ov.format.unwrap_or_else(|| match obj.get("format") {
        None => Format::Text,
        Some(v) => v.as_str().and_then(Format::parse).unwrap_or_else(|| {
            diags.push(Diagnostic::new("format", format!("expected \"text\", \"csv\" or \"json\", got {v}")));
            Format::Text
        }),
    });

    // parameters: file values first, then command-line pairs
    let mut raw: Vec<(String, String, Value)> = vec![];
    match obj.get("params") {
        None => {}
        Some(Value::Object(m)) => {
            raw.extend(m.iter().map(|(k, v)| (format!("params.{k}"), k.clone(), v.clone())));
        }
        Some(v) => diags.push(Diagnostic::new("params", format!("expected a table, got {v}"))),
    }
    for pair in &ov.params {
        match pair.split_once('=') {
            Some((k, v)) => {
                let k = k.trim();
                raw.push((format!("--param {k}"), k.to_string(), Value::String(v.trim().to_string())));
            }
            None => diags.push(Diagnostic::new(format!("--param {pair}"), "expected key=value")),
        }
    }

    let mut params = Params::default();
    if let Some(s) = scenario {
        let names: Vec<String> = s.params.iter().map(|p| p.name.to_string()).collect();
        for spec in s.params {
            params.insert(spec.name, spec.default_value());
        }
        for (path, key, value) in &raw {
            match s.params.iter().find(|p| p.name == key) {
                Some(spec) => match spec.resolve(value) {
                    Ok(v) => params.insert(spec.name, v),
                    Err(e) => diags.push(Diagnostic::new(path.clone(), e)),
                },
                None => diags.push(Diagnostic::new(
                    path.clone(),
                    format!("unknown parameter for scenario '{}'{}", s.name, suggestion(key, &names)),
                )),
            }
        }
        if diags.is_empty() {
            if let Err(e) = (s.check)(&params) {
                diags.push(Diagnostic::new("params", e));
            }
        }
    }

    match scenario {
        Some(scenario) if diags.is_empty() => Ok(ScenarioConfig { scenario, seed, out_dir, format, params }),
        _ => Err(diags),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn collects_all_diagnostics() {
        let doc = json!({
            "scenario": "boost",
            "sead": 3,
            "params": { "v": 1.5, "axs": 2 }
        });
        let diags = validate(&doc, &Overrides::default(), None).unwrap_err();
        let text: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        assert_eq!(diags.len(), 3, "{text:?}");
        assert!(text.iter().any(|d| d.contains("did you mean 'seed'")));
        assert!(text.iter().any(|d| d.contains("|V| < 1 required")));
        assert!(text.iter().any(|d| d.contains("did you mean 'axis'")));
    }

    #[test]
    fn overrides_win() {
        let doc = json!({ "scenario": "boost", "seed": 3, "params": { "v": 0.5 } });
        let ov = Overrides { seed: Some(9), params: vec!["v=0.25".into()], ..Default::default() };
        let cfg = validate(&doc, &ov, None).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.params.num("v"), 0.25);
    }

    #[test]
    fn group_restriction() {
        let ov = Overrides { scenario: Some("boost".into()), ..Default::default() };
        assert!(validate(&json!({}), &ov, Some(Group::Rel)).is_ok());
        let diags = validate(&json!({}), &ov, Some(Group::Field)).unwrap_err();
        assert!(diags[0].message.contains("not a field scenario"));
    }

    #[test]
    fn toml_and_json_documents() {
        let t = parse("scenario = \"satellite\"\n[params]\nt = \"50 yr\"\n", "toml").unwrap();
        let j = parse(r#"{"scenario": "satellite", "params": {"t": "50 yr"}}"#, "json").unwrap();
        assert_eq!(t, j);
        assert!(parse("x", "yaml").is_err());
    }
}
