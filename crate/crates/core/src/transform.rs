//! Spinor-type and vector-type transformations of unit triads.
//!
//! A vector-type map is a 3x3 complex orthogonal unimodular matrix `O` acting as
//! `q_k' = O_kn q_n`. A spinor-type map is a unimodular 2x2 matrix `U` acting as
//! `q_k' = U q_k U^-1`. Both keep the multiplication rule form-invariant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c, CMatrix};
use crate::rep::{pauli_triad, UnitTriad};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
            Axis::Three => 2,
        }
    }

    /// From a 1-based axis number.
    pub fn from_number(n: usize) -> Result<Axis> {
        match n {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            3 => Ok(Axis::Three),
            _ => Err(Error::InvalidArgument(format!("axis must be 1, 2 or 3, got {n}"))),
        }
    }
}

/// Elementary rotation by a complex angle about one axis.
///
/// `O_3^A = (cos A, sin A, 0; -sin A, cos A, 0; 0, 0, 1)`, `O_2^B = (cos B, 0, -sin B; 0, 1, 0;
/// sin B, 0, cos B)`, `O_1^G = (1, 0, 0; 0, cos G, sin G; 0, -sin G, cos G)`.
pub fn elementary(axis: Axis, angle: Complex64) -> CMatrix {
    let (co, si) = (angle.cos(), angle.sin());
    let (z, one) = (c(0.0, 0.0), c(1.0, 0.0));
    match axis {
        Axis::Three => CMatrix::from_rows(&[[co, si, z], [-si, co, z], [z, z, one]]),
        Axis::Two => CMatrix::from_rows(&[[co, z, -si], [z, one, z], [si, z, co]]),
        Axis::One => CMatrix::from_rows(&[[one, z, z], [z, co, si], [z, -si, co]]),
    }
}

/// Derivative of [`elementary`] with respect to the angle.
pub fn elementary_derivative(axis: Axis, angle: Complex64) -> CMatrix {
    let (co, si) = (angle.cos(), angle.sin());
    let z = c(0.0, 0.0);
    match axis {
        Axis::Three => CMatrix::from_rows(&[[-si, co, z], [-co, -si, z], [z, z, z]]),
        Axis::Two => CMatrix::from_rows(&[[-si, z, -co], [z, z, z], [co, z, -si]]),
        Axis::One => CMatrix::from_rows(&[[z, z, z], [z, -si, co], [z, -co, -si]]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotorKind {
    RealRotation,
    Hyperbolic,
    GeneralComplex,
}

impl RotorKind {
    /// Classified from the entries: all real, each entry real or purely imaginary, or neither.
    pub fn classify(m: &CMatrix) -> RotorKind {
        let t = tol::scaled(tol::ALGEBRA, m.max_abs());
        if m.max_imag() <= t {
            return RotorKind::RealRotation;
        }
        let split = m.as_slice().iter().all(|z| z.re.abs() <= t || z.im.abs() <= t);
        if split {
            RotorKind::Hyperbolic
        } else {
            RotorKind::GeneralComplex
        }
    }
}

/// Orthogonal unimodular 3x3 complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rotor {
    matrix: CMatrix,
    kind: RotorKind,
}

impl<'de> Deserialize<'de> for Rotor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            matrix: CMatrix,
        }
        let raw = Raw::deserialize(d)?;
        Rotor::new(raw.matrix).map_err(serde::de::Error::custom)
    }
}

/// `max |O O^T - 1|` and `|det O - 1|`.
pub fn orthogonality_deviation(m: &CMatrix) -> (f64, f64) {
    let ortho = (m * &m.transpose()).max_abs_diff(&CMatrix::identity(m.dim()));
    let det = (m.det() - c(1.0, 0.0)).norm();
    (ortho, det)
}

impl Rotor {
    /// Validates orthogonality and unimodularity with the matrix tolerance.
    pub fn new(matrix: CMatrix) -> Result<Rotor> {
        Self::with_tolerance(matrix, tol::MATRIX)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Rotor> {
        if matrix.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: matrix.dim(),
            });
        }
        let (ortho, det) = orthogonality_deviation(&matrix);
        let t = tol::scaled(tol, matrix.max_abs().powi(2));
        if ortho > t {
            return Err(Error::NotOrthogonal { deviation: ortho });
        }
        if det > t {
            return Err(Error::NotUnimodular { deviation: det });
        }
        Ok(Self::from_matrix_unchecked(matrix))
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Rotor {
        let kind = RotorKind::classify(&matrix);
        Rotor { matrix, kind }
    }

    pub fn identity() -> Rotor {
        Self::from_matrix_unchecked(CMatrix::identity(3))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> RotorKind {
        self.kind
    }

    /// `self * other`: applying `other` first, then `self`, to the triad as `q' = O q`.
    pub fn compose(&self, other: &Rotor) -> Rotor {
        Self::from_matrix_unchecked(&self.matrix * &other.matrix)
    }

    pub fn inverse(&self) -> Rotor {
        Self::from_matrix_unchecked(self.matrix.transpose())
    }

    /// Components `a_k' = O_kn a_n` of a fixed Q-vector in the transformed triad.
    pub fn apply_components(&self, a: &[Complex64; 3]) -> [Complex64; 3] {
        let v = self.matrix.apply(a);
        [v[0], v[1], v[2]]
    }
}

/// `O_3^A O_2^B O_1^G`.
pub fn rotor_from_angles(a: Complex64, b: Complex64, g: Complex64) -> Rotor {
    let m = &(&elementary(Axis::Three, a) * &elementary(Axis::Two, b)) * &elementary(Axis::One, g);
    Rotor::from_matrix_unchecked(m)
}

pub fn rotor_from_real_angles(alpha: f64, beta: f64, gamma: f64) -> Rotor {
    rotor_from_angles(c(alpha, 0.0), c(beta, 0.0), c(gamma, 0.0))
}

/// Substitution linking the two parameterizations:
/// `z = sin B`, `x = -sin A cos B`, `y = -sin G cos B`.
pub fn xyz_from_angles(a: Complex64, b: Complex64, g: Complex64) -> (Complex64, Complex64, Complex64) {
    (-a.sin() * b.cos(), -g.sin() * b.cos(), b.sin())
}

/// The explicit three-parameter form of `O` in `x, y, z` (principal square roots).
pub fn rotor_from_xyz(x: Complex64, y: Complex64, z: Complex64) -> Result<Rotor> {
    let one = c(1.0, 0.0);
    let d = one - z * z;
    if d.norm() <= tol::MATRIX {
        return Err(Error::ParameterizationSingularity(format!(
            "1 - z^2 = {d} vanishes"
        )));
    }
    let sx = (one - x * x - z * z).sqrt();
    let sy = (one - y * y - z * z).sqrt();
    let m = CMatrix::from_rows(&[
        [sx, -(x * sy + y * z * sx) / d, (x * y - z * sx * sy) / d],
        [x, (sx * sy - x * y * z) / d, (-y * sx - x * z * sy) / d],
        [z, y, sy],
    ]);
    Ok(Rotor::from_matrix_unchecked(m))
}

/// Hyperbolic rotation: the elementary rotation with imaginary angle `i psi`.
pub fn h_rotation(axis: Axis, psi: f64) -> Rotor {
    Rotor::from_matrix_unchecked(elementary(axis, c(0.0, psi)))
}

/// Unimodular 2x2 matrix acting by conjugation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinorMap {
    u: CMatrix,
    #[serde(skip)]
    u_inv: CMatrix,
}

impl<'de> Deserialize<'de> for SpinorMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            u: CMatrix,
        }
        let raw = Raw::deserialize(d)?;
        SpinorMap::new(raw.u).map_err(serde::de::Error::custom)
    }
}

impl SpinorMap {
    pub fn new(u: CMatrix) -> Result<SpinorMap> {
        if u.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: u.dim(),
            });
        }
        let u_inv = u.inverse()?;
        let dev = (u.det() - c(1.0, 0.0)).norm();
        if dev > tol::scaled(tol::MATRIX, u.max_abs().powi(2)) {
            return Err(Error::NotUnimodular { deviation: dev });
        }
        Ok(SpinorMap { u, u_inv })
    }

    /// Rescale an invertible matrix by `1/sqrt(det)` (principal branch) onto SL(2,C).
    pub fn normalized(u: CMatrix) -> Result<SpinorMap> {
        if u.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: u.dim(),
            });
        }
        let d = u.det();
        if d.norm() <= 1e-14 * u.max_abs().powi(2) {
            return Err(Error::Singular);
        }
        Self::new(u.scale(d.sqrt().inv()))
    }

    pub fn identity() -> SpinorMap {
        SpinorMap {
            u: CMatrix::identity(2),
            u_inv: CMatrix::identity(2),
        }
    }

    /// `cos(A/2) + sin(A/2) q_axis` with the standard units; its action equals the
    /// elementary rotor with angle `A` about the same axis.
    pub fn rotation(axis: Axis, angle: Complex64) -> SpinorMap {
        let half = angle * 0.5;
        let q = &pauli_triad().q[axis.index()];
        let u = &CMatrix::identity(2).scale(half.cos()) + &q.scale(half.sin());
        let u_inv = &CMatrix::identity(2).scale(half.cos()) - &q.scale(half.sin());
        SpinorMap { u, u_inv }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn inverse_matrix(&self) -> &CMatrix {
        &self.u_inv
    }

    /// `U1 U2`; its action is the action of `U2` followed by that of `U1`.
    pub fn compose(&self, other: &SpinorMap) -> SpinorMap {
        SpinorMap {
            u: &self.u * &other.u,
            u_inv: &other.u_inv * &self.u_inv,
        }
    }

    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        &(&self.u * m) * &self.u_inv
    }

    pub fn negated(&self) -> SpinorMap {
        SpinorMap {
            u: -&self.u,
            u_inv: -&self.u_inv,
        }
    }
}

/// `q_k' = U q_k U^-1`.
pub fn spinor_transform(u: &SpinorMap, triad: &UnitTriad) -> Result<UnitTriad> {
    if triad.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: triad.dim(),
        });
    }
    Ok(UnitTriad {
        q: [0, 1, 2].map(|k| u.conjugate(&triad.q[k])),
    })
}

/// `q_k' = O_kn q_n`.
pub fn vector_transform(o: &Rotor, triad: &UnitTriad) -> UnitTriad {
    let m = o.matrix();
    UnitTriad {
        q: [0, 1, 2].map(|k| triad.combine(&[m[(k, 0)], m[(k, 1)], m[(k, 2)]])),
    }
}

/// Validating variant of [`vector_transform`] for a raw matrix.
pub fn vector_transform_matrix(o: &CMatrix, triad: &UnitTriad) -> Result<UnitTriad> {
    let rotor = Rotor::new(o.clone())?;
    Ok(vector_transform(&rotor, triad))
}

/// `O_kn = -1/2 Tr(U q_k U^-1 q_n)` with the standard units.
pub fn o_from_u(u: &SpinorMap) -> Rotor {
    let q = pauli_triad();
    let moved = spinor_transform(u, &q).expect("standard triad is 2x2");
    let m = CMatrix::from_fn(3, |k, n| (&moved.q[k] * &q.q[n]).trace() * -0.5);
    Rotor::from_matrix_unchecked(m)
}

/// `U = (1 - O_kn q_n q_k) / (2 sqrt(1 + O_mm))`, principal square root.
///
/// Defined up to a global sign; singular for rotations by pi where `1 + tr O = 0`.
pub fn u_from_o(o: &Rotor) -> Result<SpinorMap> {
    let q = pauli_triad();
    let m = o.matrix();
    let s = c(1.0, 0.0) + m.trace();
    if s.norm() <= tol::MATRIX {
        return Err(Error::HalfTurnSingularity { value: s.norm() });
    }
    let mut num = CMatrix::identity(2);
    for k in 0..3 {
        for n in 0..3 {
            num = &num - &(&q.q[n] * &q.q[k]).scale(m[(k, n)]);
        }
    }
    let u = num.scale((s.sqrt() * 2.0).inv());
    SpinorMap::normalized(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::verify_triad;

    #[test]
    fn elementary_matrices_match_closed_form() {
        let a = 0.3_f64;
        let r = rotor_from_real_angles(a, 0.0, 0.0);
        let expect = CMatrix::from_real_rows(&[
            [a.cos(), a.sin(), 0.0],
            [-a.sin(), a.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ]);
        assert!(r.matrix().approx_eq(&expect, 1e-15));
        assert_eq!(r.kind(), RotorKind::RealRotation);
        assert!(rotor_from_real_angles(0.0, 0.0, 0.0).matrix().approx_eq(&CMatrix::identity(3), 0.0));
    }

    #[test]
    fn imaginary_angle_is_hyperbolic() {
        let psi = 0.7_f64;
        let r = rotor_from_angles(c(0.0, psi), c(0.0, 0.0), c(0.0, 0.0));
        assert_eq!(r.kind(), RotorKind::Hyperbolic);
        assert!((r.matrix()[(0, 0)] - c(psi.cosh(), 0.0)).norm() < 1e-15);
        assert!((r.matrix()[(0, 1)] - c(0.0, psi.sinh())).norm() < 1e-15);
        assert!((r.matrix()[(1, 0)] - c(0.0, -psi.sinh())).norm() < 1e-15);
        let (o, d) = orthogonality_deviation(r.matrix());
        assert!(o < 1e-14 && d < 1e-14);
        assert_eq!(h_rotation(Axis::Three, psi), r);
    }

    #[test]
    fn h_rotation_on_pauli_triad() {
        let psi = 0.4_f64;
        let t = vector_transform(&h_rotation(Axis::Three, psi), &pauli_triad());
        let expect = CMatrix::m2(c(0.0, 0.0), c(0.0, -psi.exp()), c(0.0, -(-psi).exp()), c(0.0, 0.0));
        assert!(t.q[0].approx_eq(&expect, 1e-14));
        assert!(verify_triad(&t).passes(1e-12));
        assert_eq!(h_rotation(Axis::Two, 0.0), Rotor::identity());
    }

    #[test]
    fn rapidities_add() {
        let (p1, p2) = (0.3, -1.1);
        let lhs = h_rotation(Axis::Three, p1).compose(&h_rotation(Axis::Three, p2));
        assert!(lhs.matrix().approx_eq(h_rotation(Axis::Three, p1 + p2).matrix(), 1e-14));
    }

    #[test]
    fn improper_matrix_rejected() {
        let m = CMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(matches!(
            vector_transform_matrix(&m, &pauli_triad()),
            Err(Error::NotUnimodular { .. })
        ));
        let m = CMatrix::from_real_rows(&[[2.0, 0.0, 0.0], [0.0, 0.5, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(Rotor::new(m), Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn spinor_rotation_matches_rotor() {
        let alpha = 0.9_f64;
        let q = pauli_triad();
        let u = SpinorMap::rotation(Axis::Three, c(alpha, 0.0));
        let via_u = spinor_transform(&u, &q).unwrap();
        let expect = &q.q[0].scale_re(alpha.cos()) + &q.q[1].scale_re(alpha.sin());
        assert!(via_u.q[0].approx_eq(&expect, 1e-15));
        let via_o = vector_transform(&rotor_from_real_angles(alpha, 0.0, 0.0), &q);
        assert!(via_u.max_abs_diff(&via_o) < 1e-15);
        for axis in Axis::ALL {
            let angle = c(0.4, -0.2);
            let u = SpinorMap::rotation(axis, angle);
            assert!(o_from_u(&u).matrix().approx_eq(&elementary(axis, angle), 1e-14));
        }
    }

    #[test]
    fn identity_maps() {
        let q = pauli_triad();
        assert_eq!(spinor_transform(&SpinorMap::identity(), &q).unwrap(), q);
        assert_eq!(vector_transform(&Rotor::identity(), &q), q);
        let u = u_from_o(&Rotor::identity()).unwrap();
        assert!(u.matrix().approx_eq(&CMatrix::identity(2), 1e-15));
    }

    #[test]
    fn half_turn_is_singular() {
        let r = rotor_from_real_angles(std::f64::consts::PI, 0.0, 0.0);
        assert!(matches!(u_from_o(&r), Err(Error::HalfTurnSingularity { .. })));
    }

    #[test]
    fn non_invertible_spinor_rejected() {
        let m = CMatrix::m2(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(SpinorMap::new(m.clone()), Err(Error::Singular));
        assert_eq!(SpinorMap::normalized(m), Err(Error::Singular));
        let m = CMatrix::identity(2).scale_re(2.0);
        assert!(matches!(SpinorMap::new(m), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn xyz_form_matches_angles() {
        let (a, b, g) = (c(0.3, 0.1), c(-0.2, 0.05), c(0.5, -0.1));
        let (x, y, z) = xyz_from_angles(a, b, g);
        let lhs = rotor_from_xyz(x, y, z).unwrap();
        assert!(lhs.matrix().approx_eq(rotor_from_angles(a, b, g).matrix(), 1e-13));
        assert!(rotor_from_xyz(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))
            .unwrap()
            .matrix()
            .approx_eq(&CMatrix::identity(3), 0.0));
        assert!(matches!(
            rotor_from_xyz(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
            Err(Error::ParameterizationSingularity(_))
        ));
    }
}
