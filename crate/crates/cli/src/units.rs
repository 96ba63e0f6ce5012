//! Unit conversion at the configuration boundary. Every quantity is converted to the base
//! unit of its dimension: relativistic speeds to fractions of c, everything else to SI.

use std::f64::consts::PI;

use qphys::rel::{CENTURY, C_LIGHT, DAY, JULIAN_YEAR};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Dimensionless,
    Time,
    Speed,
    Angle,
    Rate,
    Length,
    Mass,
    /// Mechanical speed in SI, as opposed to [`Dimension::Speed`] in units of c.
    Velocity,
    Stiffness,
}

impl Dimension {
    pub fn base_unit(self) -> &'static str {
        match self {
            Dimension::Dimensionless => "1",
            Dimension::Time => "s",
            Dimension::Speed => "c",
            Dimension::Angle => "rad",
            Dimension::Rate => "rad/s",
            Dimension::Length => "m",
            Dimension::Mass => "kg",
            Dimension::Velocity => "m/s",
            Dimension::Stiffness => "N/m",
        }
    }

    pub fn units(self) -> &'static [(&'static str, f64)] {
        match self {
            Dimension::Dimensionless => &[("1", 1.0)],
            Dimension::Time => &[
                ("s", 1.0),
                ("ms", 1e-3),
                ("min", 60.0),
                ("h", 3600.0),
                ("d", DAY),
                ("yr", JULIAN_YEAR),
                ("century", CENTURY),
            ],
            Dimension::Speed => &[("c", 1.0), ("m/s", 1.0 / C_LIGHT), ("km/s", 1e3 / C_LIGHT)],
            Dimension::Angle => &[
                ("rad", 1.0),
                ("deg", PI / 180.0),
                ("arcmin", PI / 10_800.0),
                ("arcsec", PI / 648_000.0),
            ],
            Dimension::Rate => &[
                ("rad/s", 1.0),
                ("1/s", 1.0),
                ("deg/s", PI / 180.0),
                ("rad/h", 1.0 / 3600.0),
                ("rad/d", 1.0 / DAY),
            ],
            Dimension::Length => &[("m", 1.0), ("cm", 1e-2), ("km", 1e3)],
            Dimension::Mass => &[("kg", 1.0), ("g", 1e-3)],
            Dimension::Velocity => &[("m/s", 1.0), ("km/s", 1e3), ("km/h", 1.0 / 3.6)],
            Dimension::Stiffness => &[("N/m", 1.0), ("N/cm", 100.0)],
        }
    }

    pub fn factor(self, unit: &str) -> Option<f64> {
        self.units().iter().find(|(u, _)| *u == unit).map(|(_, f)| *f)
    }
}

/// Parses `"<number>"` (in `default_unit`) or `"<number> <unit>"` into base units.
pub fn parse_quantity(text: &str, dim: Dimension, default_unit: &str) -> Result<f64, String> {
    let text = text.trim();
    let (num, unit) = match text.find(|ch: char| ch.is_whitespace()) {
        Some(i) => (&text[..i], text[i..].trim()),
        None => (text, default_unit),
    };
    let value: f64 = num
        .parse()
        .map_err(|_| format!("'{num}' is not a number"))?;
    if !value.is_finite() {
        return Err(format!("'{num}' is not finite"));
    }
    let factor = dim.factor(unit).ok_or_else(|| {
        let known: Vec<&str> = dim.units().iter().map(|(u, _)| *u).collect();
        format!("unit '{unit}' is not a {dim:?} unit (known: {})", known.join(", ")).to_lowercase()
    })?;
    Ok(value * factor)
}

/// Converts a base-unit value into `unit`.
pub fn from_base(value: f64, dim: Dimension, unit: &str) -> Option<f64> {
    dim.factor(unit).map(|f| value / f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(parse_quantity("7.5 h", Dimension::Time, "s").unwrap(), 27_000.0);
        assert_eq!(parse_quantity("2", Dimension::Time, "d").unwrap(), 2.0 * DAY);
        let v = parse_quantity("29.8 km/s", Dimension::Speed, "c").unwrap();
        assert!((v * C_LIGHT - 29_800.0).abs() < 1e-9);
        assert!((parse_quantity("60 arcmin", Dimension::Angle, "rad").unwrap() - PI / 180.0).abs() < 1e-15);
        assert_eq!(from_base(CENTURY, Dimension::Time, "yr"), Some(100.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_quantity("fast", Dimension::Speed, "c").is_err());
        let e = parse_quantity("3 furlongs", Dimension::Length, "m").unwrap_err();
        assert!(e.contains("furlongs") && e.contains("km"));
        assert!(parse_quantity("inf", Dimension::Time, "s").is_err());
    }
}
