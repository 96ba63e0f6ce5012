use std::collections::BTreeSet;

use serde_json::json;

use qphys_cli::config::{validate, Overrides};
use qphys_cli::CATALOG;

/// Every public library operation that a scenario must reach.
const OPERATIONS: &[&str] = &[
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
    "spinor_transform",
    "vector_transform",
    "rotor_from_angles",
    "rotor_from_xyz",
    "u_from_o",
    "o_from_u",
    "h_rotation",
    "eigen_bundle",
    "projector",
    "third_eigenfunctions",
    "invariant_sigma",
    "project_qvector",
    "connection_from_basis",
    "connection_from_spinor",
    "connection_from_rotor",
    "transform_connection",
    "frenet_frame",
    "curvature",
    "qspace_predicates",
    "integrate_rotating_frame",
    "chasing_basis_equations",
    "rotating_oscillator",
    "boost",
    "interval_square",
    "circular_motion",
    "thomas_simple",
    "thomas_general",
    "satellite_deviation",
    "fueter_residual",
    "maxwell_equivalence_report",
    "pauli_check",
    "ym_strength_check",
];

#[test]
fn every_operation_is_reachable() {
    let covered: BTreeSet<&str> = CATALOG.iter().flat_map(|s| s.covers.iter().copied()).collect();
    let missing: Vec<_> = OPERATIONS.iter().filter(|op| !covered.contains(*op)).collect();
    assert!(missing.is_empty(), "operations without a scenario: {missing:?}");
}

#[test]
fn every_scenario_passes_with_defaults() {
    for s in CATALOG {
        let ov = Overrides { scenario: Some(s.name.into()), seed: Some(3), ..Default::default() };
        let cfg = validate(&json!({}), &ov, None).unwrap_or_else(|d| panic!("{}: {d:?}", s.name));
        let exec = qphys_cli::run(&cfg).unwrap_or_else(|e| panic!("{}: {e:#}", s.name));
        assert!(exec.report.pass, "{}", exec.report.to_text());
        assert!(!exec.report.checks.is_empty(), "{} has no checks", s.name);
    }
}

#[test]
fn group_aliases_accept_their_own_scenarios() {
    for s in CATALOG {
        let ov = Overrides { scenario: Some(s.name.into()), ..Default::default() };
        assert!(validate(&json!({}), &ov, Some(s.group)).is_ok(), "{}", s.name);
    }
}
