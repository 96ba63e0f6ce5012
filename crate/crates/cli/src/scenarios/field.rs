use qphys::field::{
    fueter_residual, maxwell_equivalence_report, pauli_check, plane_wave, strength_from_curvature, ym_strength_check,
    EMField, GaugeData, GaussianSpinor, MaxwellResidual, QuantumSetup, SineSeries, VectorPotential,
};
use qphys::geom::{connection_from_rotor, curvature};
use qphys::grid::{DiffOptions, Grid, GridAxis};
use qphys::io::{strength_table, vector_field_table};

use super::geometry::random_path;
use super::{no_cross_check, rng, Group, Scenario};
use crate::params::{Check, ParamSpec, Params};
use crate::report::Outcome;
use crate::units::Dimension;

const STEP: ParamSpec = ParamSpec::number("step", Check::Range { min: 1e-5, max: 0.1 }, "1e-3", "grid step");

fn grid(names: &[&str], center: &[f64], h: f64, half: usize) -> anyhow::Result<Grid> {
    Ok(Grid::new(names.iter().zip(center).map(|(n, c0)| GridAxis::centered(*n, *c0, h, half)).collect())?)
}

fn spacetime(h: f64) -> anyhow::Result<Grid> {
    grid(&["t", "x", "y", "z"], &[0.1, 0.2, -0.3, 0.4], h, 3)
}

fn space(h: f64, half: usize) -> anyhow::Result<Grid> {
    grid(&["x", "y", "z"], &[0.1, -0.2, 0.3], h, half)
}

pub const FUETER: Scenario = Scenario {
    name: "fueter",
    group: Group::Field,
    summary: "Fueter residual of a vacuum plane wave packed as (B + iE)_n q_n",
    params: &[
        ParamSpec::number("amplitude", Check::Any, "1", "wave amplitude"),
        ParamSpec::quantity("phase", Dimension::Angle, "rad", Check::Any, "0.3", "wave phase"),
        STEP,
    ],
    covers: &["fueter_residual"],
    check: no_cross_check,
    run: fueter,
};

fn fueter(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let amp = p.num("amplitude");
    let em = EMField::sample(&spacetime(p.num("step"))?, plane_wave(amp, p.num("phase")))?;
    let res = fueter_residual(&em, DiffOptions::default())?;
    let mut o = Outcome::default();
    for w in MaxwellResidual::ALL {
        o.headline(w.name(), res.named_max(w), "");
    }
    o.within("Fueter residual of the plane wave (relative to amplitude)", res.max_abs() / amp.abs().max(1.0), 1e-6);
    o.series = Some(vector_field_table(&em.e, "E"));
    Ok(o)
}

pub const MAXWELL: Scenario = Scenario {
    name: "maxwell",
    group: Group::Field,
    summary: "Fueter operator split against the four vector-calculus Maxwell residuals",
    params: &[
        ParamSpec::integer("terms", 1, 64, "4", "sine terms per random field"),
        ParamSpec::number("step", Check::Range { min: 1e-5, max: 0.1 }, "1e-2", "grid step"),
    ],
    covers: &["maxwell_equivalence_report", "fueter_residual"],
    check: no_cross_check,
    run: maxwell,
};

fn maxwell(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let terms = p.int("terms");
    let (se, sb) = (SineSeries::random(&mut r, 4, terms), SineSeries::random(&mut r, 4, terms));
    let em = EMField::sample(&spacetime(p.num("step"))?, |t, x| {
        let q = [t, x[0], x[1], x[2]];
        (se.at(&q), sb.at(&q))
    })?;
    let opts = DiffOptions::default();
    let report = maxwell_equivalence_report(&em, opts)?;
    let wave = EMField::sample(&spacetime(1e-3)?, plane_wave(1.0, 0.0))?;
    let vacuum = maxwell_equivalence_report(&wave, opts)?;
    let mut o = Outcome::default();
    for (name, v) in &report.residuals {
        o.headline(&format!("random field {name}"), *v, "");
    }
    o.within("Fueter split matches vector calculus", report.matching_gap, 1e-10);
    o.within("plane wave satisfies all four equations", vacuum.max_residual(), 1e-6);
    o.within("plane wave split matches vector calculus", vacuum.matching_gap, 1e-10);
    Ok(o)
}

pub const PAULI: Scenario = Scenario {
    name: "pauli",
    group: Group::Field,
    summary: "quaternionic kinetic operator against the Pauli Hamiltonian on a Gaussian spinor",
    params: &[
        ParamSpec::number("charge", Check::Any, "1.3", "particle charge"),
        ParamSpec::number("mass", Check::Positive, "0.7", "particle mass"),
        ParamSpec::number("hbar", Check::Positive, "1.1", "reduced Planck constant"),
        ParamSpec::number("c_light", Check::Positive, "2", "speed of light"),
        ParamSpec::number("b1", Check::Any, "0.3", "uniform field"),
        ParamSpec::number("b2", Check::Any, "-0.5", "uniform field"),
        ParamSpec::number("b3", Check::Any, "0.8", "uniform field"),
        ParamSpec::integer("terms", 0, 64, "3", "random sine terms added to the potential"),
        ParamSpec::number("width", Check::Positive, "0.8", "spinor width"),
        STEP,
    ],
    covers: &["pauli_check"],
    check: no_cross_check,
    run: pauli,
};

fn pauli(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let b = [p.num("b1"), p.num("b2"), p.num("b3")];
    let psi = GaussianSpinor::random(&mut r, [0.0; 3], p.num("width"));
    let series = if p.int("terms") > 0 { SineSeries::random(&mut r, 3, p.int("terms")) } else { SineSeries::zero() };
    let setup = |potential: VectorPotential| QuantumSetup {
        charge: p.num("charge"),
        mass: p.num("mass"),
        hbar: p.num("hbar"),
        c_light: p.num("c_light"),
        potential,
        psi: psi.clone(),
        grid: space(p.num("step"), 5).expect("valid grid"),
    };
    let opts = DiffOptions::default();
    let general = pauli_check(&setup(VectorPotential { uniform_b: b, series }), opts)?;
    let uniform = pauli_check(&setup(VectorPotential::uniform(b)), opts)?;
    let mut o = Outcome::default();
    o.headline("Bohr magneton e hbar / 2 m c", uniform.bohr_magneton, "");
    match uniform.spin_coefficient {
        Some(mu) => o.headline("extracted spin coefficient", mu, ""),
        None => o.note("the field vanishes, so no spin coefficient can be extracted"),
    }
    o.within("operator identity gap", general.operator_gap, 1e-6);
    o.within("operator identity gap, uniform field", uniform.operator_gap, 1e-6);
    if let Some(err) = uniform.coefficient_error() {
        o.within("spin coefficient vs Bohr magneton (relative)", err, 1e-6);
    }
    Ok(o)
}

pub const YANGMILLS: Scenario = Scenario {
    name: "yangmills",
    group: Group::Field,
    summary: "curvature strength against the Yang-Mills form of the dual potential",
    params: &[ParamSpec::integer("terms", 1, 64, "3", "sine terms per connection component"), STEP],
    covers: &["ym_strength_check", "curvature"],
    check: no_cross_check,
    run: yangmills,
};

fn yangmills(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let h = p.num("step");
    let opts = DiffOptions::default();
    let series: Vec<SineSeries> = (0..3).map(|_| SineSeries::random(&mut r, 3, p.int("terms"))).collect();
    let gauge = GaugeData::from_series(&space(h, 3)?, &series)?;
    let ym = ym_strength_check(&gauge, opts)?;
    let path = random_path(&mut r, 3, false);
    let metric = GaugeData { connection: connection_from_rotor(&path.rotor_field(&space(h, 5)?), opts)? };
    let metric_ym = ym_strength_check(&metric, opts)?;

    let mut o = Outcome::default();
    o.headline("gap with the literal potential", ym.literal_gap, "");
    o.headline("gap with the flipped potential", ym.flipped_gap, "");
    o.headline("gap with reversed commutator order", ym.reversed_order_gap, "");
    o.headline("strength norm", ym.strength_norm, "");
    o.headline_text("consistent convention", ym.consistent_convention());
    o.within("two-way strength gap", ym.identity_gap(), 1e-5);
    o.within("strength antisymmetry", ym.antisymmetry_residual, 1e-10);
    o.within("metric connection strength", metric_ym.strength_norm, 1e-5);
    o.series = Some(strength_table(&strength_from_curvature(&curvature(&gauge.connection, opts)?)));
    Ok(o)
}
