//! Per-scenario parameter schemas and resolved parameter values.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::units::{parse_quantity, Dimension};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Check {
    Any,
    Positive,
    NonNegative,
    /// `|V| < 1` in units of c.
    Subluminal,
    Range { min: f64, max: f64 },
}

impl Check {
    fn apply(self, v: f64) -> Result<(), String> {
        match self {
            Check::Any => Ok(()),
            Check::Positive if v > 0.0 => Ok(()),
            Check::Positive => Err(format!("must be positive, got {v}")),
            Check::NonNegative if v >= 0.0 => Ok(()),
            Check::NonNegative => Err(format!("must be nonnegative, got {v}")),
            Check::Subluminal if v.abs() < 1.0 => Ok(()),
            Check::Subluminal => Err(format!("|V| < 1 required, got {v} c")),
            Check::Range { min, max } if (min..=max).contains(&v) => Ok(()),
            Check::Range { min, max } => Err(format!("must lie in [{min}, {max}], got {v}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kind {
    Quantity { dimension: Dimension, unit: &'static str, check: Check },
    Integer { min: i64, max: i64 },
    Choice { options: &'static [&'static str] },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(flatten)]
    pub kind: Kind,
    /// Written the way a user would write it, e.g. `"100 yr"`.
    pub default: &'static str,
    pub doc: &'static str,
}

impl ParamSpec {
    pub const fn quantity(
        name: &'static str,
        dimension: Dimension,
        unit: &'static str,
        check: Check,
        default: &'static str,
        doc: &'static str,
    ) -> Self {
        Self { name, kind: Kind::Quantity { dimension, unit, check }, default, doc }
    }

    pub const fn number(name: &'static str, check: Check, default: &'static str, doc: &'static str) -> Self {
        Self::quantity(name, Dimension::Dimensionless, "1", check, default, doc)
    }

    pub const fn integer(name: &'static str, min: i64, max: i64, default: &'static str, doc: &'static str) -> Self {
        Self { name, kind: Kind::Integer { min, max }, default, doc }
    }

    pub const fn choice(
        name: &'static str,
        options: &'static [&'static str],
        default: &'static str,
        doc: &'static str,
    ) -> Self {
        Self { name, kind: Kind::Choice { options }, default, doc }
    }

    /// Parses a raw value given either as JSON/TOML scalar or as command-line text.
    pub fn resolve(&self, raw: &Value) -> Result<ParamValue, String> {
        match self.kind {
            Kind::Quantity { dimension, unit, check } => {
                let v = match raw {
                    Value::Number(n) => n.as_f64().map(|x| x * dimension.factor(unit).unwrap_or(1.0)),
                    Value::String(s) => Some(parse_quantity(s, dimension, unit)?),
                    _ => None,
                }
                .ok_or_else(|| format!("expected a number or a \"<number> <unit>\" string, got {raw}"))?;
                check.apply(v)?;
                Ok(ParamValue::Quantity { value: v, unit: dimension.base_unit() })
            }
            Kind::Integer { min, max } => {
                let v = match raw {
                    Value::Number(n) => n.as_i64(),
                    Value::String(s) => s.trim().parse().ok(),
                    _ => None,
                }
                .ok_or_else(|| format!("expected an integer, got {raw}"))?;
                if !(min..=max).contains(&v) {
                    return Err(format!("must lie in [{min}, {max}], got {v}"));
                }
                Ok(ParamValue::Integer(v))
            }
            Kind::Choice { options } => {
                let s = match raw {
                    Value::String(s) => s.trim().to_ascii_lowercase(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(format!("expected one of {}, got {raw}", options.join(", "))),
                };
                if options.contains(&s.as_str()) {
                    Ok(ParamValue::Choice(s))
                } else {
                    Err(format!("expected one of {}, got '{s}'", options.join(", ")))
                }
            }
        }
    }

    pub fn default_value(&self) -> ParamValue {
        self.resolve(&Value::String(self.default.into()))
            .unwrap_or_else(|e| panic!("default of '{}' is invalid: {e}", self.name))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Quantity { value: f64, unit: &'static str },
    Integer(i64),
    Choice(String),
}

impl ParamValue {
    fn echo(&self) -> Value {
        match self {
            ParamValue::Quantity { value, unit } if *unit == "1" => json!(value),
            ParamValue::Quantity { value, unit } => json!({ "value": value, "unit": unit }),
            ParamValue::Integer(i) => json!(i),
            ParamValue::Choice(s) => json!(s),
        }
    }
}

/// Fully resolved parameters of one run, in base units.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    values: BTreeMap<String, ParamValue>,
}

impl Params {
    pub fn insert(&mut self, name: &str, v: ParamValue) {
        self.values.insert(name.to_string(), v);
    }

    /// Quantity in base units. Panics on a name missing from the schema.
    pub fn num(&self, name: &str) -> f64 {
        match self.values.get(name) {
            Some(ParamValue::Quantity { value, .. }) => *value,
            Some(ParamValue::Integer(i)) => *i as f64,
            other => panic!("parameter '{name}' is not numeric: {other:?}"),
        }
    }

    pub fn int(&self, name: &str) -> usize {
        match self.values.get(name) {
            Some(ParamValue::Integer(i)) => usize::try_from(*i).expect("schema keeps integers nonnegative"),
            other => panic!("parameter '{name}' is not an integer: {other:?}"),
        }
    }

    pub fn choice(&self, name: &str) -> &str {
        match self.values.get(name) {
            Some(ParamValue::Choice(s)) => s,
            other => panic!("parameter '{name}' is not a choice: {other:?}"),
        }
    }

    pub fn echo(&self) -> BTreeMap<String, Value> {
        self.values.iter().map(|(k, v)| (k.clone(), v.echo())).collect()
    }
}

/// Closest candidate by Jaro-Winkler similarity, if any is reasonably close.
pub fn nearest<'a>(key: &str, candidates: impl IntoIterator<Item = &'a str>) -> Option<&'a str> {
    candidates
        .into_iter()
        .map(|c| (strsim::jaro_winkler(key, c), c))
        .filter(|(s, _)| *s >= 0.7)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: ParamSpec =
        ParamSpec::quantity("v", Dimension::Speed, "c", Check::Subluminal, "0.6", "speed");

    #[test]
    fn quantities_resolve_to_base_units() {
        let p = V.resolve(&json!("2997.92458 km/s")).unwrap();
        match p {
            ParamValue::Quantity { value, unit } => {
                assert!((value - 0.01).abs() < 1e-15);
                assert_eq!(unit, "c");
            }
            _ => panic!(),
        }
        assert_eq!(V.default_value(), ParamValue::Quantity { value: 0.6, unit: "c" });
    }

    #[test]
    fn superluminal_is_rejected() {
        let e = V.resolve(&json!(1.5)).unwrap_err();
        assert!(e.contains("|V| < 1 required"), "{e}");
    }

    #[test]
    fn integers_and_choices() {
        let n = ParamSpec::integer("n", 1, 10, "3", "count");
        assert_eq!(n.resolve(&json!(4)).unwrap(), ParamValue::Integer(4));
        assert!(n.resolve(&json!(11)).is_err());
        assert!(n.resolve(&json!(2.5)).is_err());
        let b = ParamSpec::choice("body", &["phobos", "metis"], "phobos", "moon");
        assert_eq!(b.resolve(&json!("Metis")).unwrap(), ParamValue::Choice("metis".into()));
        assert!(b.resolve(&json!("moon")).unwrap_err().contains("phobos"));
    }

    #[test]
    fn nearest_key() {
        assert_eq!(nearest("radious", ["radius", "period"]), Some("radius"));
        assert_eq!(nearest("zzz", ["radius", "period"]), None);
    }
}
