//! Tolerances shared by the identity checks.

/// Algebraic identities on O(10) operands.
pub const ALGEBRA: f64 = 1e-12;

/// Matrix identities after a handful of products and square roots.
pub const MATRIX: f64 = 1e-10;

/// Connection computed from grids, any of the three routes.
pub const CONNECTION: f64 = 1e-6;

/// Curvature and field strength (two nested differentiations).
pub const CURVATURE: f64 = 1e-5;

/// Default threshold below which a value counts as zero in predicates.
pub const ZERO: f64 = 1e-9;

/// Scale an absolute tolerance by the operand magnitude (never below 1).
pub fn scaled(tol: f64, magnitude: f64) -> f64 {
    tol * magnitude.max(1.0)
}
