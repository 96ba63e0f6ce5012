use qphys::Complex64;
use serde_json::json;

use qphys::algebra::{bq_norm_sq, qmul, Biquaternion};
use qphys::eigen::{eigen_bundle, invariant_sigma, project_qvector, projector, third_eigenfunctions, Parity, TriadEigen};
use qphys::io::Table;
use qphys::matrix::{c, CMatrix};
use qphys::random;
use qphys::rep::{pauli_triad, rank_double, triad_from_traceless, verify_triad};
use qphys::transform::{
    h_rotation, o_from_u, orthogonality_deviation, rotor_from_angles, rotor_from_xyz, spinor_transform, u_from_o,
    vector_transform, xyz_from_angles, Axis,
};

use super::{no_cross_check, rng, Group, Scenario};
use crate::params::{Check, ParamSpec, Params};
use crate::report::Outcome;
use crate::units::Dimension;

pub const VERIFY_ALGEBRA: Scenario = Scenario {
    name: "verify-algebra",
    group: Group::Algebra,
    summary: "quaternion identities, biquaternion norm and triad checks on random samples",
    params: &[
        ParamSpec::integer("samples", 3, 1_000_000, "10000", "random quaternions"),
        ParamSpec::integer("triads", 1, 100_000, "1000", "random traceless pairs"),
    ],
    covers: &[
        "qmul",
        "conjugate",
        "norm",
        "divide_left",
        "divide_right",
        "bq_norm_sq",
        "pauli_triad",
        "triad_from_traceless",
        "rank_double",
        "verify_triad",
    ],
    check: no_cross_check,
    run: verify_algebra,
};

fn max_diff(a: [f64; 4], b: [f64; 4]) -> f64 {
    (0..4).fold(0.0_f64, |m, i| m.max((a[i] - b[i]).abs()))
}

fn verify_algebra(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let qs: Vec<_> = (0..p.int("samples")).map(|_| random::quaternion(&mut r)).collect();
    let (mut four, mut assoc, mut conj, mut norm, mut div) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for w in qs.windows(3) {
        let (a, b, q) = (&w[0], &w[1], &w[2]);
        let ab = qmul(a, b);
        let scale = (a.norm() * b.norm()).max(1.0);
        let lhs = a.norm_sqr() * b.norm_sqr();
        four = four.max((lhs - ab.norm_sqr()).abs() / lhs.max(1.0));
        norm = norm.max((ab.norm() - a.norm() * b.norm()).abs() / scale);
        let abq = qmul(&ab, q).to_array();
        assoc = assoc.max(max_diff(abq, qmul(a, &qmul(b, q)).to_array()) / (scale * q.norm()).max(1.0));
        conj = conj.max(max_diff(ab.conjugate().to_array(), qmul(&b.conjugate(), &a.conjugate()).to_array()) / scale);
        let left = qmul(&a.divide_left(b)?, b).to_array();
        let right = qmul(b, &a.divide_right(b)?).to_array();
        div = div.max(max_diff(left, a.to_array()).max(max_diff(right, a.to_array())) / a.norm().max(1.0));
    }

    // good biquaternions keep their norm under complex rotors
    let mut bq = 0.0_f64;
    for _ in 0..p.int("triads") {
        let a = random::unit_vector(&mut r).map(|x| 2.0 * x);
        let raw = random::unit_vector(&mut r);
        let along = (0..3).map(|k| a[k] * raw[k]).sum::<f64>() / 4.0;
        let b = [0, 1, 2].map(|k| raw[k] - along * a[k]);
        let u = Biquaternion::from_real_imag(a, b);
        let moved = u.transformed(&random::complex_rotor(&mut r));
        let size: f64 = moved.to_array().iter().map(|x| x * x).sum();
        bq = bq.max((bq_norm_sq(&moved)? - bq_norm_sq(&u)?).abs() / size.max(1.0));
    }

    let (mut triad, mut doubled, mut imag) = (verify_triad(&pauli_triad()).max_deviation(), 0.0_f64, 0.0_f64);
    for _ in 0..p.int("triads") {
        let t = triad_from_traceless(&random::traceless_pair(&mut r))?;
        triad = triad.max(verify_triad(&t).max_deviation());
        let d = rank_double(&t);
        imag = imag.max(d.q.iter().fold(0.0_f64, |m, q| m.max(q.max_imag())));
        doubled = doubled.max(verify_triad(&d).max_deviation());
    }

    let mut o = Outcome::default();
    o.headline("quaternion samples", qs.len() as f64, "");
    o.headline("triad samples", p.int("triads") as f64, "");
    o.within("four-squares identity (relative)", four, 1e-12);
    o.within("associativity (relative)", assoc, 1e-12);
    o.within("conjugation reverses products (relative)", conj, 1e-12);
    o.within("norm is multiplicative (relative)", norm, 1e-12);
    o.within("left and right division invert qmul", div, 1e-12);
    o.within("biquaternion norm under complex rotors", bq, 1e-10);
    o.within("2x2 triads satisfy the multiplication rule", triad, 1e-10);
    o.within("rank-doubled triads satisfy the multiplication rule", doubled, 1e-10);
    o.within("rank-doubled triads are real", imag, 0.0);
    Ok(o)
}

pub const TRANSFORM: Scenario = Scenario {
    name: "transform",
    group: Group::Transform,
    summary: "rotor from a complex angle triple, its spinor map and a hyperbolic rotation",
    params: &[
        ParamSpec::quantity("alpha", Dimension::Angle, "rad", Check::Any, "0.3", "real part of A (axis 3)"),
        ParamSpec::quantity("beta", Dimension::Angle, "rad", Check::Any, "0.5", "real part of B (axis 2)"),
        ParamSpec::quantity("gamma", Dimension::Angle, "rad", Check::Any, "0.7", "real part of G (axis 1)"),
        ParamSpec::quantity("alpha_im", Dimension::Angle, "rad", Check::Any, "0", "imaginary part of A"),
        ParamSpec::quantity("beta_im", Dimension::Angle, "rad", Check::Any, "0", "imaginary part of B"),
        ParamSpec::quantity("gamma_im", Dimension::Angle, "rad", Check::Any, "0", "imaginary part of G"),
        ParamSpec::choice("axis", &["1", "2", "3"], "3", "axis of the hyperbolic rotation"),
        ParamSpec::number("psi", Check::Any, "0.5", "rapidity of the hyperbolic rotation"),
    ],
    covers: &[
        "rotor_from_angles",
        "rotor_from_xyz",
        "u_from_o",
        "o_from_u",
        "spinor_transform",
        "vector_transform",
        "h_rotation",
    ],
    check: no_cross_check,
    run: transform,
};

fn kind_name(k: qphys::RotorKind) -> String {
    serde_json::to_value(k).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn transform(p: &Params, _seed: u64) -> anyhow::Result<Outcome> {
    let a = c(p.num("alpha"), p.num("alpha_im"));
    let b = c(p.num("beta"), p.num("beta_im"));
    let g = c(p.num("gamma"), p.num("gamma_im"));
    let rotor = rotor_from_angles(a, b, g);
    let scale = rotor.matrix().max_abs().max(1.0);
    let q = pauli_triad();
    let mut o = Outcome::default();
    o.headline_text("rotor kind", kind_name(rotor.kind()));
    let (ortho, det) = orthogonality_deviation(rotor.matrix());
    o.within("rotor orthogonality and det 1 (relative)", ortho.max(det) / (scale * scale), 1e-12);

    // the x, y, z form uses principal roots, so it reproduces the angles only on that branch
    let (x, y, z) = xyz_from_angles(a, b, g);
    let principal = [a, b, g].iter().all(|w| w.re.abs() < std::f64::consts::FRAC_PI_2);
    match rotor_from_xyz(x, y, z) {
        Ok(r) if principal => o.within("xyz form equals angle form", r.matrix().max_abs_diff(rotor.matrix()) / scale, 1e-10),
        Ok(_) => o.note("angles outside the principal branch; xyz comparison skipped"),
        Err(e) => o.note(format!("xyz form unavailable: {e}")),
    }

    let moved = vector_transform(&rotor, &q);
    o.within("transformed triad keeps the multiplication rule", verify_triad(&moved).max_deviation() / (scale * scale), 1e-10);
    let u = u_from_o(&rotor)?;
    let back = o_from_u(&u);
    o.within("o_from_u(u_from_o(O)) = O", back.matrix().max_abs_diff(rotor.matrix()) / scale, 1e-10);
    let by_spinor = spinor_transform(&u, &q)?;
    o.within("spinor and vector transforms agree", by_spinor.max_abs_diff(&moved) / scale, 1e-10);
    o.within("spinor map is unimodular", (u.matrix().det() - c(1.0, 0.0)).norm(), 1e-12);

    let axis = Axis::from_number(p.choice("axis").parse()?)?;
    let psi = p.num("psi");
    let h = h_rotation(axis, psi);
    o.headline_text("hyperbolic rotor kind", kind_name(h.kind()));
    o.headline("cosh psi", psi.cosh(), "");
    let hm = h.matrix();
    let off = (axis.index() + 1) % 3;
    o.within("hyperbolic entry equals cosh psi", (hm[(off, off)] - c(psi.cosh(), 0.0)).norm() / psi.cosh(), 1e-14);
    let (ho, hd) = orthogonality_deviation(hm);
    o.within("hyperbolic rotor orthogonality", ho.max(hd) / psi.cosh().powi(2), 1e-12);

    o.data.insert("rotor".into(), serde_json::to_value(rotor.matrix())?);
    o.data.insert("spinor".into(), serde_json::to_value(u.matrix())?);
    o.data.insert("h_rotor".into(), serde_json::to_value(hm)?);
    o.data.insert("xyz".into(), json!([[x.re, x.im], [y.re, y.im], [z.re, z.im]]));
    let mut t = Table::new(vec!["row".into(), "col".into(), "re".into(), "im".into()]);
    for i in 0..3 {
        for j in 0..3 {
            let e = rotor.matrix()[(i, j)];
            t.push(vec![(i + 1) as f64, (j + 1) as f64, e.re, e.im])?;
        }
    }
    o.series = Some(t);
    Ok(o)
}

pub const EIGEN: Scenario = Scenario {
    name: "eigen",
    group: Group::Algebra,
    summary: "eigenfunctions, projectors and the 24 invariant sigma products of the standard triad",
    params: &[ParamSpec::integer("maps", 1, 100_000, "100", "random SL(2,C) maps for the invariance check")],
    covers: &["eigen_bundle", "projector", "third_eigenfunctions", "invariant_sigma", "project_qvector"],
    check: no_cross_check,
    run: eigen,
};

fn eigen(p: &Params, seed: u64) -> anyhow::Result<Outcome> {
    let mut r = rng(seed);
    let q = pauli_triad();
    let te = TriadEigen::from_triad(&q)?;
    let mut o = Outcome::default();

    let (mut eig, mut proj, mut closed) = (0.0_f64, 0.0_f64, 0.0_f64);
    let one = CMatrix::identity(2);
    for k in 0..3 {
        let b = eigen_bundle(&q.q[k])?;
        eig = eig.max(b.residual(&q.q[k]));
        for par in Parity::BOTH {
            let m = projector(&b, par);
            proj = proj.max((&m * &m).max_abs_diff(&m)).max(m.det().norm()).max((m.trace() - 1.0).norm());
            // C± = (1 ∓ i q) / 2
            let expect = (&one - &q.q[k].scale(c(0.0, par.sign()))).scale_re(0.5);
            closed = closed.max(m.max_abs_diff(&expect));
        }
    }
    o.within("eigenvalues are ±i", eig, 1e-10);
    o.within("projectors idempotent, det 0, trace 1", proj, 1e-10);
    o.within("projectors equal (1 ∓ i q)/2", closed, 1e-12);

    let third = third_eigenfunctions(&te.bundles[0], &te.bundles[1])?;
    o.within("third eigenfunctions from the first two", third.residual(&q.q[2]), 1e-10);

    let s12 = invariant_sigma(&te.bundles[0], &te.bundles[1], Parity::Plus);
    o.headline("sigma_12+ real part", s12.re, "");
    o.headline("sigma_12+ imaginary part", s12.im, "");
    o.within("sigma_12+ = (1 - i)/2", (s12 - c(0.5, -0.5)).norm(), 1e-12);

    let table = te.invariants();
    let mut inv = 0.0_f64;
    for _ in 0..p.int("maps") {
        let u = random::sl2c(&mut r);
        let moved = te.transformed(u.matrix(), u.inverse_matrix());
        for (a, b) in table.iter().zip(moved.invariants()) {
            inv = inv.max((a.value - b.value).norm());
        }
    }
    o.within("sigma products invariant under spinor maps", inv, 1e-10);

    // projecting a_k q'_k with q' = O q onto unit n gives sum_k a_k O_kn
    let rot = random::real_rotor(&mut r);
    let moved = vector_transform(&rot, &q);
    let a = random::unit_vector(&mut r);
    let mut pq = 0.0_f64;
    for n in 0..3 {
        let expect: Complex64 = (0..3).map(|k| rot.matrix()[(k, n)] * a[k]).sum();
        for par in Parity::BOTH {
            pq = pq.max((project_qvector(&a, &moved, &te.bundles[n], par) - expect).norm());
        }
    }
    o.within("Q-vector projections read rotor entries", pq, 1e-10);

    let mut t = Table::new(["k", "n", "phi_parity", "psi_parity", "re", "im"].map(String::from).to_vec());
    for e in &table {
        t.push(vec![
            (e.k + 1) as f64,
            (e.n + 1) as f64,
            e.phi_parity.sign(),
            e.psi_parity.sign(),
            e.value.re,
            e.value.im,
        ])?;
    }
    o.headline("sigma products", table.len() as f64, "");
    o.series = Some(t);
    Ok(o)
}
