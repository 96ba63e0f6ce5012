//! Shipped orbital constants and the headline numbers derived from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rel::{rapidity, satellite_deviation, thomas_simple, ARCMIN, ARCSEC, CENTURY, C_LIGHT, DAY};

const SHIPPED: &str = include_str!("../data/ephemeris.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Planet {
    pub name: String,
    /// km/s
    pub orbital_velocity: f64,
    pub period_days: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Satellite {
    pub name: String,
    pub parent: String,
    pub period_hours: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ephemeris {
    pub version: u32,
    pub planet: Vec<Planet>,
    pub satellite: Vec<Satellite>,
}

impl Ephemeris {
    pub fn shipped() -> Ephemeris {
        Self::parse(SHIPPED).expect("shipped ephemeris parses")
    }

    pub fn parse(text: &str) -> Result<Ephemeris> {
        toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("ephemeris: {e}")))
    }

    pub fn planet(&self, name: &str) -> Result<&Planet> {
        self.planet
            .iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown planet {name}")))
    }

    pub fn satellite(&self, name: &str) -> Result<&Satellite> {
        self.satellite
            .iter()
            .find(|s| s.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown satellite {name}")))
    }

    /// Deviation of a satellite seen from Earth after `t` seconds, in arcminutes.
    pub fn satellite_deviation_arcmin(&self, name: &str, t: f64) -> Result<f64> {
        let s = self.satellite(name)?;
        let parent = self.planet(&s.parent)?;
        let earth = self.planet("earth")?;
        let omega = 2.0 * PI / (s.period_hours * 3600.0);
        Ok(satellite_deviation(omega, earth.orbital_velocity * 1e3, parent.orbital_velocity * 1e3, t)? / ARCMIN)
    }

    /// Accumulated Thomas angle of a planet's orbit over `t` seconds, in arcseconds.
    pub fn thomas_drift_arcsec(&self, name: &str, t: f64) -> Result<f64> {
        let p = self.planet(name)?;
        let omega = 2.0 * PI / (p.period_days * DAY);
        let psi = rapidity(p.orbital_velocity * 1e3 / C_LIGHT)?;
        Ok(thomas_simple(omega, psi) * t / ARCSEC)
    }

    pub fn per_century_arcmin(&self, name: &str) -> Result<f64> {
        self.satellite_deviation_arcmin(name, CENTURY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_constants_load() {
        let e = Ephemeris::shipped();
        assert_eq!(e.version, 1);
        assert_eq!(e.satellite("Phobos").unwrap().parent, "mars");
        assert!(e.planet("pluto").is_err());
    }

    #[test]
    fn headline_numbers() {
        let e = Ephemeris::shipped();
        let phobos = e.per_century_arcmin("phobos").unwrap();
        assert!((phobos - 19.75).abs() < 0.1, "{phobos}");
        let metis = e.per_century_arcmin("metis").unwrap();
        assert!((metis - 11.6).abs() < 0.2, "{metis}");
        // the magnitude differs from the commonly quoted 2.7 arcsec
        let mercury = e.thomas_drift_arcsec("mercury", CENTURY).unwrap();
        assert!(mercury < 0.0 && (mercury.abs() - 6.7).abs() < 0.2, "{mercury}");
    }
}
