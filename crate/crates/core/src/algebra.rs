//! Hamilton quaternions and biquaternions.
//!
//! Components are stored in the fixed order `(scalar, x1, x2, x3)`. Vector indices in
//! this crate are zero-based: `q1, q2, q3` are indices `0, 1, 2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol;

/// Kronecker symbol.
pub fn delta(j: usize, k: usize) -> f64 {
    if j == k {
        1.0
    } else {
        0.0
    }
}

/// Levi-Civita symbol with `epsilon(0, 1, 2) = +1`.
pub fn epsilon(j: usize, k: usize, n: usize) -> f64 {
    match (j, k, n) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// The structure constants of the vector-unit multiplication rule
/// `q_j q_k = -delta_jk + epsilon_jkn q_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureConstants {
    pub delta: [[f64; 3]; 3],
    pub epsilon: [[[f64; 3]; 3]; 3],
}

impl StructureConstants {
    pub fn new() -> Self {
        let mut delta_table = [[0.0; 3]; 3];
        let mut eps = [[[0.0; 3]; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                delta_table[j][k] = delta(j, k);
                for n in 0..3 {
                    eps[j][k][n] = epsilon(j, k, n);
                }
            }
        }
        Self {
            delta: delta_table,
            epsilon: eps,
        }
    }
}

impl Default for StructureConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `a + b i + c j + d k` with real components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_parts(scalar: f64, vector: [f64; 3]) -> Self {
        Self::new(scalar, vector[0], vector[1], vector[2])
    }

    pub fn scal(&self) -> f64 {
        self.a
    }

    /// Vector part as a pure quaternion.
    pub fn vect(&self) -> Quaternion {
        Quaternion::new(0.0, self.b, self.c, self.d)
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute component, used to scale tolerances.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// `Q1 conj(Q2) / |Q2|^2`, so that `divide_left(Q1, Q2) * Q2 = Q1`.
    pub fn divide_left(&self, divisor: &Quaternion) -> Result<Quaternion> {
        let n = divisor.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDivisor);
        }
        Ok(*self * divisor.conjugate() * (1.0 / n))
    }

    /// `conj(Q2) Q1 / |Q2|^2`, so that `Q2 * divide_right(Q1, Q2) = Q1`.
    pub fn divide_right(&self, divisor: &Quaternion) -> Result<Quaternion> {
        let n = divisor.norm_sqr();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroDivisor);
        }
        Ok(divisor.conjugate() * *self * (1.0 / n))
    }

    pub fn approx_eq(&self, other: &Quaternion, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }
}

/// Hamilton product.
pub fn qmul(lhs: &Quaternion, rhs: &Quaternion) -> Quaternion {
    let (a1, v1) = (lhs.a, lhs.vector());
    let (a2, v2) = (rhs.a, rhs.vector());
    let dot = v1[0] * v2[0] + v1[1] * v2[1] + v1[2] * v2[2];
    let cross = [
        v1[1] * v2[2] - v1[2] * v2[1],
        v1[2] * v2[0] - v1[0] * v2[2],
        v1[0] * v2[1] - v1[1] * v2[0],
    ];
    Quaternion::new(
        a1 * a2 - dot,
        a1 * v2[0] + a2 * v1[0] + cross[0],
        a1 * v2[1] + a2 * v1[1] + cross[1],
        a1 * v2[2] + a2 * v1[2] + cross[2],
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(&self, &rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, value: f64, unit: &str) -> fmt::Result {
    if value.is_sign_negative() {
        write!(f, " - {} {}", -value, unit)
    } else {
        write!(f, " + {} {}", value, unit)
    }
}

impl fmt::Display for Quaternion {
    /// Canonical text form `a + b i + c j + d k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        write_term(f, self.b, "i")?;
        write_term(f, self.c, "j")?;
        write_term(f, self.d, "k")
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c, d] = <[f64; 4]>::deserialize(deserializer)?;
        Ok(Quaternion::new(a, b, c, d))
    }
}

/// Quaternion with complex components. The vector components are
/// `u_k = a_k + i b_k`; `i` here is the complex unit, commuting with `q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquaternion {
    pub scalar: Complex64,
    pub vector: [Complex64; 3],
}

impl Biquaternion {
    pub fn new(scalar: Complex64, vector: [Complex64; 3]) -> Self {
        Self { scalar, vector }
    }

    /// Pure-vector element from real parts `a_k` and imaginary parts `b_k`.
    pub fn from_real_imag(a: [f64; 3], b: [f64; 3]) -> Self {
        Self {
            scalar: Complex64::new(0.0, 0.0),
            vector: [
                Complex64::new(a[0], b[0]),
                Complex64::new(a[1], b[1]),
                Complex64::new(a[2], b[2]),
            ],
        }
    }

    pub fn real_part(&self) -> [f64; 3] {
        self.vector.map(|z| z.re)
    }

    pub fn imag_part(&self) -> [f64; 3] {
        self.vector.map(|z| z.im)
    }

    /// `sum a_k b_k`; zero for the "good" elements that carry a norm.
    pub fn orthogonality_residual(&self) -> f64 {
        let (a, b) = (self.real_part(), self.imag_part());
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn is_good(&self, tol: f64) -> bool {
        self.orthogonality_residual().abs() <= tol
    }

    /// Complex bilinear square `sum u_k u_k` of the vector part.
    pub fn vector_square(&self) -> Complex64 {
        self.vector.iter().map(|u| u * u).sum()
    }

    /// `sum b_k^2 - sum a_k^2`, defined only for good elements.
    pub fn norm_sq(&self) -> Result<f64> {
        bq_norm_sq(self)
    }

    /// Components `u_k' = O_kn u_n` of the same vector in a triad `q' = O q`.
    pub fn transformed(&self, rotor: &crate::transform::Rotor) -> Biquaternion {
        let m = rotor.matrix();
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = (0..3).map(|n| m[(k, n)] * self.vector[n]).sum();
        }
        Biquaternion::new(self.scalar, out)
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.scalar.re,
            self.scalar.im,
            self.vector[0].re,
            self.vector[0].im,
            self.vector[1].re,
            self.vector[1].im,
            self.vector[2].re,
            self.vector[2].im,
        ]
    }
}

/// Norm square `sum b_k^2 - sum a_k^2` of a pure-vector biquaternion.
pub fn bq_norm_sq(u: &Biquaternion) -> Result<f64> {
    let (a, b) = (u.real_part(), u.imag_part());
    let scale = a.iter().chain(b.iter()).fold(0.0_f64, |m, x| m.max(x.abs()));
    let residual = u.orthogonality_residual();
    if residual.abs() > tol::scaled(tol::ALGEBRA, scale * scale) {
        return Err(Error::NormUndefined { residual });
    }
    let b2: f64 = b.iter().map(|x| x * x).sum();
    let a2: f64 = a.iter().map(|x| x * x).sum();
    Ok(b2 - a2)
}

impl Mul for Biquaternion {
    type Output = Biquaternion;
    fn mul(self, rhs: Biquaternion) -> Biquaternion {
        let (s1, v1) = (self.scalar, self.vector);
        let (s2, v2) = (rhs.scalar, rhs.vector);
        let dot = v1[0] * v2[0] + v1[1] * v2[1] + v1[2] * v2[2];
        let cross = [
            v1[1] * v2[2] - v1[2] * v2[1],
            v1[2] * v2[0] - v1[0] * v2[2],
            v1[0] * v2[1] - v1[1] * v2[0],
        ];
        let mut v = [Complex64::new(0.0, 0.0); 3];
        for k in 0..3 {
            v[k] = s1 * v2[k] + s2 * v1[k] + cross[k];
        }
        Biquaternion::new(s1 * s2 - dot, v)
    }
}

impl Serialize for Biquaternion {
    /// Eight numbers: `[re, im]` for the scalar, then for each vector component.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Biquaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let x = <[f64; 8]>::deserialize(deserializer)?;
        Ok(Biquaternion::new(
            Complex64::new(x[0], x[1]),
            [
                Complex64::new(x[2], x[3]),
                Complex64::new(x[4], x[5]),
                Complex64::new(x[6], x[7]),
            ],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Distributive expansion over the 16 unit products, written out as a table.
    fn brute_force_product(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
        // unit index 0 = 1, 1 = i, 2 = j, 3 = k; table[x][y] = (sign, unit)
        let table: [[(f64, usize); 4]; 4] = [
            [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
            [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
            [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
            [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
        ];
        let mut out = [0.0; 4];
        for x in 0..4 {
            for y in 0..4 {
                let (s, u) = table[x][y];
                out[u] += s * p[x] * q[y];
            }
        }
        out
    }

    #[test]
    fn unit_products() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
    }

    #[test]
    fn identity_element() {
        let q = Quaternion::new(2.0, 3.0, 0.0, 0.0);
        assert_eq!(q * Quaternion::ONE, q);
        assert_eq!(Quaternion::ONE * q, q);
    }

    #[test]
    fn product_matches_distributive_expansion() {
        let p = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let q = Quaternion::new(5.0, 6.0, 7.0, 8.0);
        let expected = brute_force_product(p.to_array(), q.to_array());
        assert_eq!(expected, [-60.0, 12.0, 30.0, 24.0]);
        assert_eq!((p * q).to_array(), expected);
    }

    #[test]
    fn norms_and_four_squares() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        let p = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let q = Quaternion::new(5.0, 6.0, 7.0, 8.0);
        assert_eq!(p.norm_sqr(), 30.0);
        assert_eq!(q.norm_sqr(), 174.0);
        assert_eq!((p * q).norm_sqr(), 5220.0);
    }

    #[test]
    fn division() {
        let p = Quaternion::new(1.0, -2.0, 0.5, 4.0);
        let q = Quaternion::new(0.3, 2.0, -1.0, 1.5);
        assert!(p.divide_left(&p).unwrap().approx_eq(&Quaternion::ONE, 1e-15));
        assert!(p.divide_right(&p).unwrap().approx_eq(&Quaternion::ONE, 1e-15));
        assert!((p.divide_left(&q).unwrap() * q).approx_eq(&p, 1e-14));
        assert!((q * p.divide_right(&q).unwrap()).approx_eq(&p, 1e-14));
        assert_eq!(p.divide_left(&Quaternion::default()), Err(Error::ZeroDivisor));
        assert_eq!(p.divide_right(&Quaternion::default()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn scal_vect_partition() {
        let q = Quaternion::new(1.5, -2.0, 3.0, 0.25);
        assert_eq!(Quaternion::ONE * q.scal() + q.vect(), q);
        assert_eq!(q.conjugate().conjugate(), q);
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
        let sc = StructureConstants::new();
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(sc.delta[j][k], sc.delta[k][j]);
                for n in 0..3 {
                    assert_eq!(sc.epsilon[j][k][n], -sc.epsilon[k][j][n]);
                    assert_eq!(sc.epsilon[j][k][n], -sc.epsilon[j][n][k]);
                }
            }
        }
        assert_eq!(sc.epsilon[0][1][2], 1.0);
    }

    #[test]
    fn display_form() {
        assert_eq!(Quaternion::new(1.0, 2.0, -3.0, 4.5).to_string(), "1 + 2 i - 3 j + 4.5 k");
    }

    #[test]
    fn json_arrays() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1.0,2.0,3.0,4.0]");
        let back: Quaternion = serde_json::from_str("[1.0,2.0,3.0,4.0]").unwrap();
        assert_eq!(back, q);
        let u = Biquaternion::from_real_imag([1.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, "[0.0,0.0,1.0,0.0,0.0,2.0,0.0,0.0]");
        assert_eq!(serde_json::from_str::<Biquaternion>(&s).unwrap(), u);
    }

    #[test]
    fn biquaternion_norms() {
        let u = Biquaternion::from_real_imag([0.0; 3], [0.0, 0.0, 2.0]);
        assert_eq!(bq_norm_sq(&u).unwrap(), 4.0);
        let u = Biquaternion::from_real_imag([1.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        assert_eq!(bq_norm_sq(&u).unwrap(), 3.0);
        let u = Biquaternion::from_real_imag([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        assert_eq!(bq_norm_sq(&u), Err(Error::NormUndefined { residual: 1.0 }));
    }

    #[test]
    fn biquaternion_product_reduces_to_real_case() {
        let p = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let q = Quaternion::new(5.0, 6.0, 7.0, 8.0);
        let lift = |x: Quaternion| {
            Biquaternion::new(
                Complex64::new(x.a, 0.0),
                [x.b, x.c, x.d].map(|v| Complex64::new(v, 0.0)),
            )
        };
        let r = lift(p) * lift(q);
        assert_eq!(r.scalar.re, -60.0);
        assert_eq!(r.vector.map(|z| z.re), [12.0, 30.0, 24.0]);
    }
}
