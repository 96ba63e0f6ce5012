use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qphys::geom::{
    connection_from_basis, connection_from_rotor, connection_from_spinor, curvature, frenet_frame, qspace_predicates,
    transform_connection, AnglePath, AngleTerm,
};
use qphys::grid::{DiffOptions, Field, Grid, GridAxis, Stencil};
use qphys::io::{connection_table, Table};
use qphys::matrix::c;
use qphys::rep::pauli_triad;

use super::{no_cross_check, rng, Group, Scenario};
use crate::params::{Check, ParamSpec, Params};
use crate::report::Outcome;
use crate::units::Dimension;

pub const CONNECTION: Scenario = Scenario {
    name: "connection-consistency",
    group: Group::Geometry,
    summary: "connection of random rotor paths by three routes, frame change, and metric curvature",
    params: &[
        ParamSpec::number("step", Check::Range { min: 1e-5, max: 1e-2 }, "1e-3", "grid step"),
        ParamSpec::integer("paths", 1, 100, "3", "random complex rotor paths"),
    ],
    covers: &[
        "connection_from_basis",
        "connection_from_spinor",
        "connection_from_rotor",
        "transform_connection",
        "curvature",
        "qspace_predicates",
    ],
    check: no_cross_check,
    run: connection,
};

pub(crate) fn random_path(r: &mut ChaCha8Rng, params: usize, complex: bool) -> AnglePath {
    let mut term = || AngleTerm {
        amp: c(r.gen_range(-0.8..0.8), if complex { r.gen_range(-0.3..0.3) } else { 0.0 }),
        wave: (0..params).map(|_| r.gen_range(-1.2..1.2)).collect(),
        phase: r.gen_range(0.0..PI),
    };
    AnglePath {
        terms: [vec![term(), term()], vec![term(), term()], vec![term(), term()]],
    }
}

fn cube(dim: usize, center: &[f64], h: f64, half: usize) -> anyhow::Result<Grid> {
    let axes = (0..dim).map(|a| GridAxis::centered(format!("x{}", a + 1), center[a], h, half)).collect();
    Ok(Grid::new(axes)?)
}

fn connection(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let h = p.num("step");
    let opts = DiffOptions::default();
    let reference = pauli_triad();
    let (mut three_way, mut exact, mut frame, mut ratio_worst) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut table = None;
    for _ in 0..p.int("paths") {
        let path = random_path(&mut r, 2, true);
        let center = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let g = cube(2, &center, h, 3)?;
        let wr = connection_from_rotor(&path.rotor_field(&g), opts)?;
        let ws = connection_from_spinor(&path.spinor_field(&g), &reference, opts)?;
        let wb = connection_from_basis(&path.triad_field(&g), opts)?;
        three_way = three_way
            .max(wr.max_abs_diff(&ws)?)
            .max(wr.max_abs_diff(&wb)?)
            .max(ws.max_abs_diff(&wb)?);
        exact = exact.max(wb.max_abs_diff(&path.analytic_connection(&wr.grid))?);

        // q = O2 q' with q' = O1 q0: the product path must give the same connection
        let outer = random_path(&mut r, 2, true);
        let o2 = outer.rotor_field(&g);
        let moved = transform_connection(&o2, &wr, opts)?;
        let o1 = path.rotor_field(&g);
        let product = Field::new(g.clone(), o2.values.iter().zip(&o1.values).map(|(a, b)| a * b).collect())?;
        frame = frame.max(moved.max_abs_diff(&connection_from_rotor(&product, opts)?)?);

        // second-order convergence of the central stencil at the common centre point
        let central = DiffOptions::unchecked(Stencil::Central);
        let err_at = |h: f64| -> anyhow::Result<f64> {
            let g = cube(2, &center, h, 2)?;
            let w = connection_from_basis(&path.triad_field(&g), central)?;
            Ok(w.max_abs_diff(&path.analytic_connection(&w.grid))?)
        };
        let ratio = err_at(2e-2)? / err_at(1e-2)?;
        ratio_worst = ratio_worst.max((ratio - 4.0).abs());
        table.get_or_insert(connection_table(&wr));
    }

    let real = random_path(&mut r, 3, false);
    let g3 = cube(3, &[0.2, 0.2, 0.2], h, 4)?;
    let ropts = DiffOptions::unchecked(Stencil::Richardson);
    let conn = connection_from_rotor(&real.rotor_field(&g3), ropts)?;
    let curv = curvature(&conn, ropts)?;
    let report = qspace_predicates(&conn, &curv, 1e-5);

    let mut o = Outcome::default();
    o.within("three routes agree", three_way, 1e-6);
    o.within("numeric connection vs analytic", exact, 1e-6);
    o.within("transform_connection vs product path", frame, 1e-6);
    o.within("step-halving error ratio |ratio - 4|", ratio_worst, 0.5);
    o.within("metric curvature |r|", report.curvature_norm, 1e-5);
    o.flag("metric compatible", report.metric_compatible);
    o.headline("connection norm", report.connection_norm, "");
    o.headline("curvature norm", report.curvature_norm, "");
    o.headline_text("torsion present", report.torsion_present.to_string());
    o.headline_text("curvature present", report.curvature_present.to_string());
    o.series = table;
    Ok(o)
}

pub const FRENET: Scenario = Scenario {
    name: "frenet",
    group: Group::Geometry,
    summary: "Frenet frame and curvatures of a helix against the closed form",
    params: &[
        ParamSpec::quantity("radius", Dimension::Length, "m", Check::Positive, "1.5", "helix radius"),
        ParamSpec::quantity("rise", Dimension::Length, "m", Check::NonNegative, "0.8", "rise per radian"),
        ParamSpec::quantity("step", Dimension::Length, "m", Check::Range { min: 1e-4, max: 0.05 }, "1e-2", "arclength step"),
        ParamSpec::integer("points", 9, 100_000, "41", "samples along the curve"),
    ],
    covers: &["frenet_frame"],
    check: no_cross_check,
    run: frenet,
};

fn frenet(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let (a, b) = (p.num("radius"), p.num("rise"));
    let cc = (a * a + b * b).sqrt();
    let g = Grid::line("s", 0.0, p.num("step"), p.int("points"))?;
    let helix = Field::sample(&g, |s| {
        let s = s[0];
        [a * (s / cc).cos(), a * (s / cc).sin(), b * s / cc]
    });
    let fr = frenet_frame(&helix, 1e-6, 1e-9)?;
    let (kappa, tau) = (a / (cc * cc), b / (cc * cc));
    let (mut e1, mut e2) = (0.0_f64, 0.0_f64);
    let mut t = Table::new(["s", "r1", "r2", "curvature", "torsion"].map(String::from).to_vec());
    for (i, (r1, r2)) in fr.r1.iter().zip(&fr.r2).enumerate() {
        e1 = e1.max((r1 - kappa).abs() / kappa);
        let r2 = r2.unwrap_or(0.0);
        e2 = e2.max((r2 - tau).abs() / kappa);
        t.push(vec![fr.grid.coords(i)[0], *r1, r2, kappa, tau])?;
    }
    let mut o = Outcome::default();
    o.headline("curvature", kappa, "1/m");
    o.headline("torsion", tau, "1/m");
    o.within("first curvature vs a/(a^2+b^2) (relative)", e1, 1e-6);
    o.within("second curvature vs b/(a^2+b^2) (relative to curvature)", e2, 1e-6);
    o.series = Some(t);
    Ok(o)
}
