//! The scenario catalog. Each scenario declares its parameter schema and the library
//! operations it exercises.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qphys::ode::OdeOptions;

use crate::params::{Check, ParamSpec, Params};
use crate::report::Outcome;

mod algebra;
mod field;
mod geometry;
mod mech;
mod rel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Algebra,
    Transform,
    Geometry,
    Mech,
    Rel,
    Field,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Algebra => "algebra",
            Group::Transform => "transform",
            Group::Geometry => "geometry",
            Group::Mech => "mech",
            Group::Rel => "rel",
            Group::Field => "field",
        }
    }
}

pub type RunFn = fn(&Params, u64) -> anyhow::Result<Outcome>;
pub type CrossCheck = fn(&Params) -> Result<(), String>;

#[derive(Debug, Serialize)]
pub struct Scenario {
    pub name: &'static str,
    pub group: Group,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    /// Library operations reached by this scenario.
    pub covers: &'static [&'static str],
    #[serde(skip)]
    pub check: CrossCheck,
    #[serde(skip)]
    pub run: RunFn,
}

pub fn no_cross_check(_: &Params) -> Result<(), String> {
    Ok(())
}

pub static CATALOG: &[Scenario] = &[
    algebra::VERIFY_ALGEBRA,
    algebra::TRANSFORM,
    algebra::EIGEN,
    geometry::CONNECTION,
    geometry::FRENET,
    mech::ROTATING,
    mech::OSCILLATOR,
    mech::CHASING,
    rel::BOOST,
    rel::CIRCULAR,
    rel::THOMAS,
    rel::SATELLITE,
    rel::HYPERBOLIC,
    field::FUETER,
    field::MAXWELL,
    field::PAULI,
    field::YANGMILLS,
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    CATALOG.iter().find(|s| s.name.eq_ignore_ascii_case(name))
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) const RTOL: ParamSpec = ParamSpec::number("rtol", Check::Range { min: 1e-14, max: 1e-3 }, "1e-12", "integrator relative tolerance");
pub(crate) const ATOL: ParamSpec = ParamSpec::number("atol", Check::Range { min: 1e-16, max: 1e-3 }, "1e-12", "integrator absolute tolerance");

pub(crate) fn ode(p: &Params) -> OdeOptions {
    OdeOptions::with_tol(p.num("rtol"), p.num("atol"))
}

/// `|a - b|` relative to `max(|b|, 1)`.
pub(crate) fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_and_defaults_valid() {
        let mut names: Vec<_> = CATALOG.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), CATALOG.len());
        for s in CATALOG {
            let mut p = Params::default();
            for spec in s.params {
                p.insert(spec.name, spec.default_value());
            }
            assert!((s.check)(&p).is_ok(), "{}", s.name);
        }
    }
}
