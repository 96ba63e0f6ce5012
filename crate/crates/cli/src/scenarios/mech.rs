use std::f64::consts::PI;

use qphys::io::{trajectory_table, Table};
use qphys::mech::{
    accumulate_rotor, chasing_equations, holding_force, integrate_rotating_frame, jacobi_integral, rotating_oscillator,
    to_inertial, AngularProgram, ChasingState, ForceLaw, RotatingFrameSpec, Vec3,
};
use qphys::ode::linspace;

use super::{no_cross_check, ode, Group, Scenario, ATOL, RTOL};
use crate::params::{Check, ParamSpec, Params};
use crate::report::Outcome;
use crate::units::Dimension;

const IDENTITY: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

const fn len(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec::quantity(name, Dimension::Length, "m", Check::Any, default, doc)
}

const fn vel(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec::quantity(name, Dimension::Velocity, "m/s", Check::Any, default, doc)
}

fn vec3(p: &Params, prefix: &str) -> Vec3 {
    [1, 2, 3].map(|j| p.num(&format!("{prefix}{j}")))
}

fn norm(v: &Vec3) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn diff(a: &Vec3, b: &Vec3) -> f64 {
    (0..3).fold(0.0_f64, |m, i| m.max((a[i] - b[i]).abs()))
}

pub const ROTATING: Scenario = Scenario {
    name: "rotating",
    group: Group::Mech,
    summary: "free particle in a uniformly rotating frame against the inertial straight line",
    params: &[
        ParamSpec::quantity("omega", Dimension::Rate, "rad/s", Check::Positive, "1", "rotation rate about axis 3"),
        ParamSpec::quantity("mass", Dimension::Mass, "kg", Check::Positive, "1", "particle mass"),
        ParamSpec::quantity("x1", Dimension::Length, "m", Check::Any, "1", "initial position"),
        ParamSpec::quantity("x2", Dimension::Length, "m", Check::Any, "0", "initial position"),
        ParamSpec::quantity("x3", Dimension::Length, "m", Check::Any, "0.2", "initial position"),
        ParamSpec::quantity("v1", Dimension::Velocity, "m/s", Check::Any, "0", "initial frame velocity"),
        ParamSpec::quantity("v2", Dimension::Velocity, "m/s", Check::Any, "0.5", "initial frame velocity"),
        ParamSpec::quantity("v3", Dimension::Velocity, "m/s", Check::Any, "0.1", "initial frame velocity"),
        ParamSpec::number("periods", Check::Positive, "10", "rotation periods to integrate"),
        ParamSpec::integer("samples", 2, 1_000_000, "201", "output samples"),
        RTOL,
        ATOL,
    ],
    covers: &["integrate_rotating_frame", "accumulate_rotor", "to_inertial", "jacobi_integral", "holding_force"],
    check: no_cross_check,
    run: rotating,
};

fn rotating(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let w = [0.0, 0.0, p.num("omega")];
    let mass = p.num("mass");
    let program = AngularProgram::constant(w);
    let spec = RotatingFrameSpec { omega: program.clone(), mass, force: ForceLaw::zero() };
    let horizon = p.num("periods") * 2.0 * PI / w[2];
    let ts = linspace(0.0, horizon, p.int("samples") - 1);
    let (x0, v0) = (vec3(p, "x"), vec3(p, "v"));
    let opts = ode(p);
    let tr = integrate_rotating_frame(&spec, x0, v0, &ts, opts)?;

    let rotors = accumulate_rotor(&program, IDENTITY, &ts, opts)?;
    let inertial = to_inertial(&tr, &program, &rotors);
    let (xi0, vi0) = inertial[0];
    let scale = norm(&xi0) + norm(&vi0) * horizon;
    let straight = ts.iter().zip(&inertial).fold(0.0_f64, |m, (t, (x, _))| {
        m.max(diff(x, &[0, 1, 2].map(|j| xi0[j] + vi0[j] * t)))
    });

    let j0 = jacobi_integral(&w, &x0, &v0);
    let jacobi = tr.x.iter().zip(&tr.v).fold(0.0_f64, |m, (x, v)| m.max((jacobi_integral(&w, x, v) - j0).abs()));

    // with the holding force the particle stays where it was put
    let held = RotatingFrameSpec {
        omega: program.clone(),
        mass,
        force: ForceLaw::new(move |_, x, _| holding_force(mass, &w, x)),
    };
    let rest = integrate_rotating_frame(&held, x0, [0.0; 3], &ts, opts)?;
    let drift = rest.x.iter().fold(0.0_f64, |m, x| m.max(diff(x, &x0)));

    let mut o = Outcome::default();
    o.headline("duration", horizon, "s");
    o.headline("Jacobi integral", j0 * mass, "J");
    o.headline("inertial speed", norm(&vi0), "m/s");
    o.within("inertial motion is a straight line (relative)", straight / scale.max(1.0), 1e-7);
    o.within("acceleration terms sum to F/m", tr.balance_residual(&spec), 1e-9);
    o.within("Jacobi integral drift (relative)", jacobi / j0.abs().max(1.0), 1e-9);
    o.within("held particle drift", drift / norm(&x0).max(1.0), 1e-9);
    o.series = Some(trajectory_table(&tr));
    Ok(o)
}

pub const OSCILLATOR: Scenario = Scenario {
    name: "oscillator",
    group: Group::Mech,
    summary: "bead on a spinning rod held by a spring: regime, closed form and integration",
    params: &[
        ParamSpec::quantity("mass", Dimension::Mass, "kg", Check::Positive, "1", "bead mass"),
        ParamSpec::quantity("k", Dimension::Stiffness, "N/m", Check::Positive, "4", "spring stiffness"),
        ParamSpec::quantity("omega", Dimension::Rate, "rad/s", Check::NonNegative, "1", "rod angular velocity"),
        len("l", "0.4", "spring rest length"),
        len("r0", "1", "initial radius"),
        vel("v0", "0.3", "initial radial velocity"),
        ParamSpec::number("periods", Check::Positive, "10", "characteristic times to integrate"),
        ParamSpec::integer("samples", 2, 1_000_000, "201", "output samples"),
        RTOL,
        ATOL,
    ],
    covers: &["rotating_oscillator", "integrate_rotating_frame"],
    check: no_cross_check,
    run: oscillator,
};

fn oscillator(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let s = rotating_oscillator(p.num("mass"), p.num("k"), p.num("omega"), p.num("l"), p.num("r0"), p.num("v0"))?;
    let horizon = p.num("periods") * s.characteristic_time();
    let ts = linspace(0.0, horizon, p.int("samples") - 1);
    let spec = s.frame_spec();
    let tr = integrate_rotating_frame(&spec, [s.r0, 0.0, 0.0], [s.v0, 0.0, 0.0], &ts, ode(p))?;
    let (mut gap, mut force) = (0.0_f64, 0.0_f64);
    let mut t = Table::new(["t", "r", "r_numeric", "r_dot", "rod_force"].map(String::from).to_vec());
    for (i, &ti) in tr.t.iter().enumerate() {
        let r = s.r(ti);
        gap = gap.max((tr.x[i][0] - r).abs() / r.abs().max(1.0));
        let f = s.rod_force(ti);
        force = force.max((2.0 * s.mass * tr.v[i][0] * s.omega - f).abs() / f.abs().max(1.0));
        t.push(vec![ti, r, tr.x[i][0], s.r_dot(ti), f])?;
    }
    let mut o = Outcome::default();
    o.headline_text("regime", serde_json::to_value(s.regime)?.as_str().unwrap_or_default());
    o.headline("rate |k/m - omega^2|^(1/2)", s.rate, "rad/s");
    o.headline("characteristic time", s.characteristic_time(), "s");
    o.headline("final radius", s.r(horizon), "m");
    o.within("closed form vs integration (relative)", gap, 1e-8);
    o.within("rod force 2 m r' omega (relative)", force, 1e-8);
    o.series = Some(t);
    Ok(o)
}

pub const CHASING: Scenario = Scenario {
    name: "chasing",
    group: Group::Mech,
    summary: "free particle followed by the chasing frame built from its azimuth and elevation",
    params: &[
        len("x1", "1", "initial inertial position"),
        len("x2", "0.2", "initial inertial position"),
        len("x3", "0.1", "initial inertial position"),
        vel("v1", "-0.1", "inertial velocity"),
        vel("v2", "0.5", "inertial velocity"),
        vel("v3", "0.2", "inertial velocity"),
        ParamSpec::quantity("duration", Dimension::Time, "s", Check::Positive, "10", "time span"),
        ParamSpec::quantity("h", Dimension::Time, "s", Check::Range { min: 1e-6, max: 1e-1 }, "1e-3", "angle differentiation step"),
        ParamSpec::integer("samples", 2, 1_000_000, "101", "output samples"),
        RTOL,
        ATOL,
    ],
    covers: &["chasing_basis_equations", "integrate_rotating_frame"],
    check: chasing_check,
    run: chasing,
};

fn chasing_check(p: &Params) -> Result<(), String> {
    // the azimuth is unwrapped relative to the start, which needs the path to miss axis 3
    let (x, v) = (vec3(p, "x"), vec3(p, "v"));
    let vv = v[0] * v[0] + v[1] * v[1];
    let s = if vv > 0.0 { (-(x[0] * v[0] + x[1] * v[1]) / vv).clamp(0.0, p.num("duration")) } else { 0.0 };
    let closest = (x[0] + v[0] * s).hypot(x[1] + v[1] * s);
    if !(closest > 1e-3 * norm(&x)) {
        return Err("the path passes too close to axis 3 for the chasing frame".into());
    }
    Ok(())
}

fn chasing(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let (x0, v) = (vec3(p, "x"), vec3(p, "v"));
    let pos = move |t: f64| [0, 1, 2].map(|j| x0[j] + v[j] * t);
    let alpha0 = x0[1].atan2(x0[0]);
    let alpha = move |t: f64| {
        let x = pos(t);
        alpha0 + (x0[0] * x[1] - x0[1] * x[0]).atan2(x0[0] * x[0] + x0[1] * x[1])
    };
    let beta = move |t: f64| {
        let x = pos(t);
        (x[2] / norm(&x)).asin()
    };
    let program = AngularProgram::chasing_numeric(alpha, beta, p.num("h"));
    let ts = linspace(0.0, p.num("duration"), p.int("samples") - 1);

    // radial kinematics of the straight line
    let radial = |t: f64| {
        let x = pos(t);
        let r = norm(&x);
        let rd = (0..3).map(|j| x[j] * v[j]).sum::<f64>() / r;
        (r, rd, (norm(&v).powi(2) - rd * rd) / r)
    };
    let mut residual = 0.0_f64;
    for &t in &ts {
        let (r, r_dot, r_ddot) = radial(t);
        let (omega, omega_dot) = program.at(t);
        let f = chasing_equations(&ChasingState { r, r_dot, r_ddot, omega, omega_dot });
        residual = residual.max(norm(&f) / r.max(1.0));
    }

    // in the chasing frame the particle stays on the first axis
    let spec = RotatingFrameSpec { omega: program.clone(), mass: 1.0, force: ForceLaw::zero() };
    let (r0, rd0, _) = radial(0.0);
    let tr = integrate_rotating_frame(&spec, [r0, 0.0, 0.0], [rd0, 0.0, 0.0], &ts, ode(p))?;
    let on_axis = tr
        .t
        .iter()
        .zip(&tr.x)
        .fold(0.0_f64, |m, (t, x)| m.max(diff(x, &[radial(*t).0, 0.0, 0.0])) / radial(*t).0.max(1.0));

    let mut o = Outcome::default();
    let (w, _) = program.at(0.0);
    o.headline("initial Omega_1", w[0], "rad/s");
    o.headline("initial Omega_2", w[1], "rad/s");
    o.headline("initial Omega_3", w[2], "rad/s");
    o.within("chasing equations vanish for free motion", residual, 1e-6);
    o.within("frame integration keeps the particle on unit 1", on_axis, 1e-6);
    let mut t = Table::new(["t", "r", "alpha", "beta", "omega1", "omega2", "omega3"].map(String::from).to_vec());
    for &ti in &ts {
        let (w, _) = program.at(ti);
        t.push(vec![ti, radial(ti).0, alpha(ti), beta(ti), w[0], w[1], w[2]])?;
    }
    o.series = Some(t);
    Ok(o)
}
