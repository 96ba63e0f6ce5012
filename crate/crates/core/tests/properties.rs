use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qphys::algebra::{delta, epsilon, qmul, Quaternion};
use qphys::eigen::{eigen_bundle, project_matrix, EigenBundle, Parity, TriadEigen};
use qphys::field::{maxwell_equivalence_report, EMField, SineSeries};
use qphys::grid::{DiffOptions, Grid, GridAxis};
use qphys::matrix::{c, CMatrix};
use qphys::mech::{integrate_rotating_frame, jacobi_integral, AngularProgram, ForceLaw, RotatingFrameSpec};
use qphys::ode::{linspace, OdeOptions};
use qphys::random;
use qphys::rel::{add_velocities, interval_square, rapidity, satellite_deviation, BQInterval, BoostAxis, RelFrame};
use qphys::rep::{pauli_triad, rank_double, rank_double_matrix, triad_from_traceless, verify_triad};
use qphys::transform::{o_from_u, orthogonality_deviation, spinor_transform, u_from_o, vector_transform};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0..10.0f64).prop_map(|a| Quaternion::new(a[0], a[1], a[2], a[3]))
}

fn random_matrix(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let entries: Vec<Complex64> = (0..n * n).map(|_| random::complex_in_disc(r)).collect();
    CMatrix::from_fn(n, |i, j| entries[i * n + j])
}

proptest! {
    #[test]
    fn associativity(a in quat(), b in quat(), q in quat()) {
        let l = qmul(&qmul(&a, &b), &q);
        let r = qmul(&a, &qmul(&b, &q));
        let scale = a.norm() * b.norm() * q.norm();
        prop_assert!(l.approx_eq(&r, 1e-12 * scale.max(1.0)));
    }

    #[test]
    fn four_squares(a in quat(), b in quat()) {
        let lhs = a.norm_sqr() * b.norm_sqr();
        let rhs = qmul(&a, &b).norm_sqr();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
    }

    #[test]
    fn conjugation_reverses_products(a in quat(), b in quat()) {
        let l = qmul(&a, &b).conjugate();
        let r = qmul(&b.conjugate(), &a.conjugate());
        prop_assert!(l.approx_eq(&r, 1e-12 * (a.norm() * b.norm()).max(1.0)));
    }

    #[test]
    fn traceless_pairs_give_triads(seed in any::<u64>()) {
        let t = triad_from_traceless(&random::traceless_pair(&mut rng(seed))).unwrap();
        prop_assert!(verify_triad(&t).max_deviation() <= 1e-10);
        let d = (&t.q[0] * &t.q[1]).det();
        prop_assert!((d - t.q[0].det() * t.q[1].det()).norm() <= 1e-10);
        prop_assert!((d - 1.0).norm() <= 1e-10);
        prop_assert!(verify_triad(&rank_double(&t)).max_deviation() <= 1e-10);
    }

    #[test]
    fn rank_doubling_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (random_matrix(&mut r, 2), random_matrix(&mut r, 2));
        let l = rank_double_matrix(&(&x * &y));
        let rr = &rank_double_matrix(&x) * &rank_double_matrix(&y);
        prop_assert!(l.max_abs_diff(&rr) <= 1e-12);
    }

    #[test]
    fn transforms_preserve_the_rule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = triad_from_traceless(&random::traceless_pair(&mut r)).unwrap();
        let u = random::sl2c(&mut r);
        prop_assert!(verify_triad(&spinor_transform(&u, &t).unwrap()).max_deviation() <= 1e-10);
        let o = random::complex_rotor(&mut r);
        prop_assert!(verify_triad(&vector_transform(&o, &t)).max_deviation() <= 1e-10);
    }

    #[test]
    fn qvector_is_frame_independent(seed in any::<u64>(), a in prop::array::uniform3(-5.0..5.0f64)) {
        let mut r = rng(seed);
        let o = random::real_rotor(&mut r);
        let q = pauli_triad();
        let moved = vector_transform(&o, &q);
        let a_new = o.apply_components(&a.map(|x| c(x, 0.0)));
        prop_assert!(q.combine_real(&a).max_abs_diff(&moved.combine(&a_new)) <= 1e-10);
    }

    #[test]
    fn rotors_close_under_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::complex_rotor(&mut r).compose(&random::complex_rotor(&mut r));
        let (ortho, det) = orthogonality_deviation(p.matrix());
        prop_assert!(ortho <= 1e-10 && det <= 1e-10);
    }

    #[test]
    fn spinor_roundtrip_up_to_sign(seed in any::<u64>()) {
        let u = random::sl2c(&mut rng(seed));
        let o = o_from_u(&u);
        // the half-turn chart is singular; those samples say nothing about the roundtrip
        prop_assume!((o.matrix().trace() + 1.0).norm() > 1e-3);
        let back = u_from_o(&o).unwrap();
        let d = back.matrix().max_abs_diff(u.matrix()).min(back.negated().matrix().max_abs_diff(u.matrix()));
        prop_assert!(d <= 1e-10 * u.matrix().max_abs().max(1.0));
    }

    #[test]
    fn eigenfunctions_and_projectors(seed in any::<u64>()) {
        let t = triad_from_traceless(&random::traceless_pair(&mut rng(seed))).unwrap();
        for q in &t.q {
            let b = eigen_bundle(q).unwrap();
            prop_assert!(b.residual(q) <= 1e-10);
            let pp = b.projectors();
            prop_assert!((&pp.plus * &pp.minus).max_abs() <= 1e-10);
            prop_assert!((&pp.plus + &pp.minus).max_abs_diff(&CMatrix::identity(2)) <= 1e-10);
            for m in [&pp.plus, &pp.minus] {
                prop_assert!(m.det().norm() <= 1e-10);
                prop_assert!((m.trace() - 1.0).norm() <= 1e-10);
                prop_assert!((m * m).max_abs_diff(m) <= 1e-10 * m.max_abs().max(1.0));
            }
        }
    }

    #[test]
    fn sigma_invariants_follow_spinor_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = triad_from_traceless(&random::traceless_pair(&mut r)).unwrap();
        let eig = TriadEigen::from_triad(&t).unwrap();
        let u = random::sl2c(&mut r);
        let moved = eig.transformed(u.matrix(), u.inverse_matrix());
        let before = eig.invariants();
        prop_assert_eq!(before.len(), 24);
        for (a, b) in before.iter().zip(moved.invariants()) {
            prop_assert!((a.value - b.value).norm() <= 1e-10);
        }
    }

    #[test]
    fn projection_reads_rotor_entries(seed in any::<u64>()) {
        let o = random::real_rotor(&mut rng(seed));
        let q = pauli_triad();
        let moved = vector_transform(&o, &q);
        let bundles: Vec<EigenBundle> = q.q.iter().map(|m| eigen_bundle(m).unwrap()).collect();
        for k in 0..3 {
            for n in 0..3 {
                for p in Parity::BOTH {
                    let v = project_matrix(&moved.q[k], &bundles[n], p);
                    prop_assert!((v - o.matrix()[(k, n)]).norm() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn interval_survives_rotations_and_boosts(
        dx in prop::array::uniform3(-3.0..3.0f64),
        s in -2.0..2.0f64,
        ops in prop::collection::vec((0..3usize, -1.5..1.5f64), 1..6),
    ) {
        // dt along a direction orthogonal to dx
        let perp = [dx[1] - dx[2], dx[2] - dx[0], dx[0] - dx[1]];
        let dt = perp.map(|x| s * x);
        let i = BQInterval::new(dx, dt);
        let mut frame = RelFrame::rest();
        for (kind, v) in ops {
            frame = match kind {
                0 => frame.rotate(v),
                1 => frame.boost(BoostAxis::Two, v),
                _ => frame.boost(BoostAxis::Three, v),
            };
        }
        let before = interval_square(&i).unwrap();
        let after = interval_square(&i.transformed(&frame.rotor)).unwrap();
        let scale: f64 = frame.rotor.matrix().max_abs().powi(2) * (dx.iter().chain(&dt).map(|x| x * x).sum::<f64>()).max(1.0);
        prop_assert!((before - after).abs() <= 1e-12 * scale, "{before} {after}");
    }

    #[test]
    fn rapidities_add(v1 in -0.99..0.99f64, v2 in -0.99..0.99f64) {
        let sum = add_velocities(v1, v2).unwrap();
        prop_assert!((sum - (v1 + v2) / (1.0 + v1 * v2)).abs() <= 1e-12);
        let f = RelFrame::rest()
            .boost(BoostAxis::Two, rapidity(v1).unwrap())
            .boost(BoostAxis::Two, rapidity(v2).unwrap());
        prop_assert!((f.velocity()[1] - sum).abs() <= 1e-12);
    }

    #[test]
    fn satellite_deviation_is_linear_in_time(
        w in 1e-6..1e-3f64,
        ve in 1e3..5e4f64,
        vp in 1e3..5e4f64,
        t in 1.0..1e10f64,
    ) {
        let one = satellite_deviation(w, ve, vp, t).unwrap();
        prop_assert_eq!(satellite_deviation(w, ve, vp, 2.0 * t).unwrap(), 2.0 * one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn jacobi_integral_is_conserved(
        w in prop::array::uniform3(-1.0..1.0f64),
        x0 in prop::array::uniform3(-1.0..1.0f64),
        v0 in prop::array::uniform3(-1.0..1.0f64),
    ) {
        let spec = RotatingFrameSpec {
            omega: AngularProgram::constant(w),
            mass: 1.0,
            force: ForceLaw::zero(),
        };
        let ts = linspace(0.0, 10.0, 20);
        let traj = integrate_rotating_frame(&spec, x0, v0, &ts, OdeOptions::default()).unwrap();
        let j0 = jacobi_integral(&w, &traj.x[0], &traj.v[0]);
        for (x, v) in traj.x.iter().zip(&traj.v) {
            let j = jacobi_integral(&w, x, v);
            prop_assert!((j - j0).abs() <= 1e-7 * j0.abs().max(1.0), "{j} {j0}");
        }
    }

    #[test]
    fn fueter_split_matches_for_any_smooth_field(seed in any::<u64>()) {
        let mut r = rng(seed);
        let se = SineSeries::random(&mut r, 4, 3);
        let sb = SineSeries::random(&mut r, 4, 3);
        let grid = Grid::new(["t", "x", "y", "z"].iter().map(|n| GridAxis::centered(*n, 0.1, 0.05, 2)).collect()).unwrap();
        let em = EMField::sample(&grid, |t, x| {
            let p = [t, x[0], x[1], x[2]];
            (se.at(&p), sb.at(&p))
        }).unwrap();
        let rep = maxwell_equivalence_report(&em, DiffOptions::unchecked(qphys::grid::Stencil::Richardson)).unwrap();
        prop_assert!(rep.matching_gap <= 1e-10);
    }
}

#[test]
fn noncommutativity_witness() {
    let ij = qmul(&Quaternion::I, &Quaternion::J);
    let ji = qmul(&Quaternion::J, &Quaternion::I);
    assert!(!ij.approx_eq(&ji, 0.5));
}

#[test]
fn epsilon_delta_contraction() {
    for n in 0..3 {
        for m in 0..3 {
            let mut s = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    s += epsilon(j, k, n) * epsilon(j, k, m);
                }
            }
            assert_eq!(s, 2.0 * delta(n, m));
        }
    }
}

#[test]
fn sigma_closed_form_value() {
    let eig = TriadEigen::from_triad(&pauli_triad()).unwrap();
    let s = eig.sigma(0, 1, Parity::Plus, Parity::Plus);
    assert!((s - Complex64::new(0.5, -0.5)).norm() <= 1e-12);
}
