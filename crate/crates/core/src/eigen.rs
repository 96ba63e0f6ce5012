//! Eigenfunctions of 2x2 vector units, projectors and the scalar invariants of a triad.
//!
//! For a unit `q` the column eigenfunctions satisfy `q psi^± = ±i psi^±` and the row ones
//! `phi^± q = ±i phi^±`. Each pair is normalized by `phi^± psi^± = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c, dot, CMatrix};
use crate::rep::{require_triad, UnitTriad};
use crate::tol;

/// Threshold below which the closed-form eigenfunctions are not used.
pub const CLOSED_FORM_THRESHOLD: f64 = 1e-8;

pub type Spinor = [Complex64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Plus, Parity::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    /// `±i`.
    pub fn eigenvalue(self) -> Complex64 {
        c(0.0, self.sign())
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Parity::Plus => '+',
            Parity::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenBundle {
    pub phi_plus: Spinor,
    pub phi_minus: Spinor,
    pub psi_plus: Spinor,
    pub psi_minus: Spinor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectorPair {
    pub plus: CMatrix,
    pub minus: CMatrix,
}

fn norm2(v: &Spinor) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn scale(v: &Spinor, s: Complex64) -> Spinor {
    [v[0] * s, v[1] * s]
}

fn add(a: &Spinor, b: &Spinor) -> Spinor {
    [a[0] + b[0], a[1] + b[1]]
}

/// Unit norm, first non-negligible component real positive.
fn canonical_column(v: Spinor) -> Spinor {
    let n = norm2(&v);
    let lead = if v[0].norm() > 1e-12 * n { v[0] } else { v[1] };
    let phase = lead / lead.norm();
    scale(&v, (phase * n).inv())
}

fn check_unit(q: &CMatrix) -> Result<()> {
    if q.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: q.dim(),
        });
    }
    let t = tol::scaled(tol::MATRIX, q.max_abs().powi(2));
    let tr = q.trace().norm();
    if tr > t {
        return Err(Error::NotTraceless { trace: tr });
    }
    let d = (q.det() - c(1.0, 0.0)).norm();
    if d > t {
        return Err(Error::NotUnimodular { deviation: d });
    }
    Ok(())
}

/// Closed form with `q = -i (a b; c -a)`, `T = a^2 + bc`; `None` in the excluded cases.
fn closed_form(q: &CMatrix) -> Option<[(Spinor, Spinor); 2]> {
    let i = c(0.0, 1.0);
    let (a, b, cc) = (i * q[(0, 0)], i * q[(0, 1)], i * q[(1, 0)]);
    let t = a * a + b * cc;
    let small = |z: Complex64| z.norm() <= CLOSED_FORM_THRESHOLD;
    if small(t) || small(b) || small(cc) || small(t - a) || small(t + a) {
        return None;
    }
    let one = c(1.0, 0.0);
    let plus = ([one, -b / (t - a)], [one, -cc / (t - a)]);
    let minus = ([one, b / (t + a)], [one, cc / (t + a)]);
    Some([plus, minus])
}

/// Null vectors of `N = q - (±i)`: (row, column).
fn null_vectors(q: &CMatrix, p: Parity) -> (Spinor, Spinor) {
    let nm = q - &CMatrix::identity(2).scale(p.eigenvalue());
    let (n11, n12, n21, n22) = (nm[(0, 0)], nm[(0, 1)], nm[(1, 0)], nm[(1, 1)]);
    let pick = |x: Spinor, y: Spinor| if norm2(&x) >= norm2(&y) { x } else { y };
    let psi = pick([-n12, n11], [n22, -n21]);
    let phi = pick([n21, -n11], [n22, -n12]);
    (phi, psi)
}

fn normalize_pair(phi: Spinor, psi: Spinor) -> (Spinor, Spinor) {
    let psi = canonical_column(psi);
    let s = dot(&phi, &psi);
    (scale(&phi, s.inv()), psi)
}

/// Eigenfunctions of a single unit, normalized by `phi psi = 1`, `|psi| = 1` and a
/// real positive leading component of `psi`.
pub fn eigen_bundle(q: &CMatrix) -> Result<EigenBundle> {
    check_unit(q)?;
    let raw = match closed_form(q) {
        Some(pairs) => pairs,
        None => [null_vectors(q, Parity::Plus), null_vectors(q, Parity::Minus)],
    };
    let (phi_plus, psi_plus) = normalize_pair(raw[0].0, raw[0].1);
    let (phi_minus, psi_minus) = normalize_pair(raw[1].0, raw[1].1);
    Ok(EigenBundle {
        phi_plus,
        phi_minus,
        psi_plus,
        psi_minus,
    })
}

impl EigenBundle {
    pub fn psi(&self, p: Parity) -> &Spinor {
        match p {
            Parity::Plus => &self.psi_plus,
            Parity::Minus => &self.psi_minus,
        }
    }

    pub fn phi(&self, p: Parity) -> &Spinor {
        match p {
            Parity::Plus => &self.phi_plus,
            Parity::Minus => &self.phi_minus,
        }
    }

    fn set(&mut self, p: Parity, phi: Spinor, psi: Spinor) {
        match p {
            Parity::Plus => {
                self.phi_plus = phi;
                self.psi_plus = psi;
            }
            Parity::Minus => {
                self.phi_minus = phi;
                self.psi_minus = psi;
            }
        }
    }

    /// `C^± = psi^± phi^±`.
    pub fn projector(&self, p: Parity) -> CMatrix {
        CMatrix::outer(self.psi(p), self.phi(p))
    }

    pub fn projectors(&self) -> ProjectorPair {
        ProjectorPair {
            plus: self.projector(Parity::Plus),
            minus: self.projector(Parity::Minus),
        }
    }

    /// `q = ±i (2 C^± - 1)`.
    pub fn reconstruct(&self, p: Parity) -> CMatrix {
        let two_c = self.projector(p).scale_re(2.0);
        (&two_c - &CMatrix::identity(2)).scale(p.eigenvalue())
    }

    /// Largest deviation from the eigen equations, normalization and orthogonality.
    pub fn residual(&self, q: &CMatrix) -> f64 {
        let mut r = 0.0_f64;
        for p in Parity::BOTH {
            let lam = p.eigenvalue();
            let qpsi = q.apply(self.psi(p));
            let phiq = q.apply_left(self.phi(p));
            for j in 0..2 {
                r = r.max((qpsi[j] - lam * self.psi(p)[j]).norm());
                r = r.max((phiq[j] - lam * self.phi(p)[j]).norm());
            }
            r = r.max((dot(self.phi(p), self.psi(p)) - c(1.0, 0.0)).norm());
            r = r.max(dot(self.phi(p.flip()), self.psi(p)).norm());
        }
        r
    }

    /// `psi' = U psi`, `phi' = phi U^-1`.
    pub fn transformed(&self, u: &CMatrix, u_inv: &CMatrix) -> EigenBundle {
        let col = |v: &Spinor| {
            let w = u.apply(v);
            [w[0], w[1]]
        };
        let row = |v: &Spinor| {
            let w = u_inv.apply_left(v);
            [w[0], w[1]]
        };
        EigenBundle {
            phi_plus: row(&self.phi_plus),
            phi_minus: row(&self.phi_minus),
            psi_plus: col(&self.psi_plus),
            psi_minus: col(&self.psi_minus),
        }
    }

    /// Rescale `psi^± -> s psi^±`, `phi^± -> phi^± / s`; the normalization is preserved.
    pub fn rescaled(&self, p: Parity, s: Complex64) -> EigenBundle {
        let mut out = self.clone();
        out.set(p, scale(self.phi(p), s.inv()), scale(self.psi(p), s));
        out
    }
}

/// `(1 ∓ i q)/2`, the projector onto the `±i` eigenspace written through the unit itself.
pub fn projector_from_unit(q: &CMatrix, p: Parity) -> CMatrix {
    let iq = q.scale(c(0.0, -p.sign()));
    (&CMatrix::identity(2) + &iq).scale_re(0.5)
}

pub fn projector(bundle: &EigenBundle, p: Parity) -> CMatrix {
    bundle.projector(p)
}

/// `sqrt(±i)` and friends on the principal branch.
fn root_of(sign_i: f64) -> Complex64 {
    c(0.0, sign_i).sqrt()
}

/// Coefficients `(s1, s2)` of `psi3 = s1 psi1 + s2 psi2` and `(t1, t2)` of `phi3`.
fn third_coefficients(p: Parity) -> ((Complex64, Complex64), (Complex64, Complex64)) {
    let s = p.sign();
    let psi = (root_of(s), root_of(-1.0) * s);
    let phi = (root_of(-s), root_of(1.0) * s);
    (psi, phi)
}

/// The linear combinations for the third unit, without re-normalization.
pub fn third_eigenfunctions_raw(b1: &EigenBundle, b2: &EigenBundle) -> EigenBundle {
    let mut out = b1.clone();
    for p in Parity::BOTH {
        let ((s1, s2), (t1, t2)) = third_coefficients(p);
        let psi = add(&scale(b1.psi(p), s1), &scale(b2.psi(p), s2));
        let phi = add(&scale(b1.phi(p), t1), &scale(b2.phi(p), t2));
        out.set(p, phi, psi);
    }
    out
}

/// Eigenfunctions of `q3 = q1 q2` assembled linearly from those of `q1` and `q2`.
///
/// The inputs must share the triad phase convention (see [`TriadEigen`]); otherwise the
/// combination is not an eigenfunction and [`Error::PhaseConvention`] is returned.
pub fn third_eigenfunctions(b1: &EigenBundle, b2: &EigenBundle) -> Result<EigenBundle> {
    let q1 = b1.reconstruct(Parity::Plus);
    let q2 = b2.reconstruct(Parity::Plus);
    let q3 = &q1 * &q2;
    let raw = third_eigenfunctions_raw(b1, b2);
    let mut out = raw.clone();
    for p in Parity::BOTH {
        let (phi, psi) = (raw.phi(p), raw.psi(p));
        let s = dot(phi, psi);
        if s.norm() <= tol::ZERO {
            return Err(Error::PhaseConvention { residual: s.norm() });
        }
        out.set(p, scale(phi, s.inv()), *psi);
    }
    let res = out.residual(&q3);
    if res > tol::scaled(tol::MATRIX, q3.max_abs()) * 1e2 {
        return Err(Error::PhaseConvention { residual: res });
    }
    Ok(out)
}

/// Rescale the second bundle so that the linear rule yields eigenfunctions of `q1 q2`.
fn align_second(b1: &EigenBundle, b2: &EigenBundle, q3: &CMatrix) -> Result<EigenBundle> {
    let mut out = b2.clone();
    for p in Parity::BOTH {
        let ((s1, s2), _) = third_coefficients(p);
        let nm = q3 - &CMatrix::identity(2).scale(p.eigenvalue());
        let row_norm = |i: usize| nm.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>();
        let r = if row_norm(0) >= row_norm(1) { 0 } else { 1 };
        let row = nm.row(r);
        let r1 = dot(row, b1.psi(p));
        let r2 = dot(row, b2.psi(p));
        if r2.norm() <= tol::ZERO {
            return Err(Error::PhaseConvention { residual: r2.norm() });
        }
        let k = -(s1 * r1) / (s2 * r2);
        out = out.rescaled(p, k);
    }
    Ok(out)
}

/// Eigenfunctions of a whole triad with the phase convention that makes the linear
/// rule for the third unit hold: bundle 1 canonical, bundle 2 rescaled, bundle 3 derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriadEigen {
    pub bundles: [EigenBundle; 3],
}

/// One scalar product `phi_(k)^a psi_(n)^b` with `k != n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub k: usize,
    pub n: usize,
    pub phi_parity: Parity,
    pub psi_parity: Parity,
    pub value: Complex64,
}

impl TriadEigen {
    pub fn from_triad(t: &UnitTriad) -> Result<TriadEigen> {
        if t.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: t.dim(),
            });
        }
        require_triad(t, tol::MATRIX * 1e2)?;
        let b1 = eigen_bundle(&t.q[0])?;
        let b2 = align_second(&b1, &eigen_bundle(&t.q[1])?, &t.q[2])?;
        let b3 = third_eigenfunctions(&b1, &b2)?;
        Ok(TriadEigen {
            bundles: [b1, b2, b3],
        })
    }

    /// `psi' = U psi`, `phi' = phi U^-1` for every bundle.
    pub fn transformed(&self, u: &CMatrix, u_inv: &CMatrix) -> TriadEigen {
        TriadEigen {
            bundles: [0, 1, 2].map(|k| self.bundles[k].transformed(u, u_inv)),
        }
    }

    /// `sigma_kn^{ab} = phi_(k)^a psi_(n)^b`.
    pub fn sigma(&self, k: usize, n: usize, phi_parity: Parity, psi_parity: Parity) -> Complex64 {
        dot(self.bundles[k].phi(phi_parity), self.bundles[n].psi(psi_parity))
    }

    /// The 24 products over ordered pairs `k != n` and the four parity combinations.
    pub fn invariants(&self) -> Vec<SigmaEntry> {
        let mut out = Vec::with_capacity(24);
        for k in 0..3 {
            for n in 0..3 {
                if k == n {
                    continue;
                }
                for a in Parity::BOTH {
                    for b in Parity::BOTH {
                        out.push(SigmaEntry {
                            k,
                            n,
                            phi_parity: a,
                            psi_parity: b,
                            value: self.sigma(k, n, a, b),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn max_residual(&self, t: &UnitTriad) -> f64 {
        (0..3).fold(0.0_f64, |m, k| m.max(self.bundles[k].residual(&t.q[k])))
    }
}

/// `phi_(k) psi_(n)` for two bundles of one triad.
pub fn invariant_sigma(phi_from: &EigenBundle, psi_from: &EigenBundle, p: Parity) -> Complex64 {
    dot(phi_from.phi(p), psi_from.psi(p))
}

/// `<X>^± = ∓i phi^± X psi^±` for `X = a_k q_k` of the given triad.
pub fn project_matrix(x: &CMatrix, bundle: &EigenBundle, p: Parity) -> Complex64 {
    let xpsi = x.apply(bundle.psi(p));
    dot(bundle.phi(p), &xpsi) * c(0.0, -p.sign())
}

/// Projection of the Q-vector `a_k q_k` (in `source`) onto the unit carrying `bundle`.
pub fn project_qvector(a: &[f64; 3], source: &UnitTriad, bundle: &EigenBundle, p: Parity) -> Complex64 {
    project_matrix(&source.combine_real(a), bundle, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{pauli_sigma, pauli_triad};
    use crate::transform::{rotor_from_real_angles, vector_transform};

    fn direct_eigvec(q: &CMatrix, lam: Complex64) -> Spinor {
        // independent oracle: solve (q - lam) v = 0 using the larger of two candidates
        let a = q[(0, 0)] - lam;
        let b = q[(0, 1)];
        let cc = q[(1, 0)];
        let d = q[(1, 1)] - lam;
        let v1 = [b, -a];
        let v2 = [d, -cc];
        if norm2(&v1) > norm2(&v2) {
            v1
        } else {
            v2
        }
    }

    fn parallel(u: &Spinor, v: &Spinor) -> bool {
        (u[0] * v[1] - u[1] * v[0]).norm() < 1e-12 * norm2(u) * norm2(v)
    }

    #[test]
    fn sigma1_closed_form() {
        let q = pauli_triad().q[0].clone();
        let b = eigen_bundle(&q).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((b.psi_plus[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((b.psi_plus[1] - c(-s, 0.0)).norm() < 1e-15);
        assert!(parallel(&b.psi_plus, &direct_eigvec(&q, c(0.0, 1.0))));
        assert!(b.residual(&q) < 1e-14);
        assert!(parallel(&b.phi_plus, &[c(1.0, 0.0), c(-1.0, 0.0)]));
    }

    #[test]
    fn sigma3_uses_fallback() {
        let q = pauli_triad().q[2].clone();
        assert!(closed_form(&q).is_none());
        let b = eigen_bundle(&q).unwrap();
        assert_eq!(b.psi_plus, [c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(b.psi_minus, [c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(b.residual(&q) < 1e-15);
        let expect = CMatrix::m2(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(projector_from_unit(&q, Parity::Minus).approx_eq(&expect, 1e-15));
        assert!(b.projector(Parity::Minus).approx_eq(&expect, 1e-15));
        // (1 + sigma3)/2 through the unit: q3 = -i sigma3
        let s3 = &pauli_sigma()[2];
        let half = (&CMatrix::identity(2) + s3).scale_re(0.5);
        assert!(half.approx_eq(&expect, 0.0));
    }

    #[test]
    fn projector_algebra() {
        let q = pauli_triad().q[1].clone();
        let b = eigen_bundle(&q).unwrap();
        let pp = b.projectors();
        assert!((&pp.plus * &pp.plus).approx_eq(&pp.plus, 1e-14));
        assert!((&pp.plus * &pp.minus).max_abs() < 1e-14);
        assert!((&pp.plus + &pp.minus).approx_eq(&CMatrix::identity(2), 1e-14));
        assert!(pp.plus.det().norm() < 1e-14);
        assert!((pp.plus.trace() - c(1.0, 0.0)).norm() < 1e-14);
        for p in Parity::BOTH {
            assert!(b.projector(p).approx_eq(&projector_from_unit(&q, p), 1e-14));
            assert!(b.reconstruct(p).approx_eq(&q, 1e-14));
        }
    }

    #[test]
    fn pauli_triad_sigma12() {
        let te = TriadEigen::from_triad(&pauli_triad()).unwrap();
        let s = te.sigma(0, 1, Parity::Plus, Parity::Plus);
        assert!((s - c(0.5, -0.5)).norm() < 1e-12, "{s}");
        assert!(te.max_residual(&pauli_triad()) < 1e-13);
        let b3 = &te.bundles[2];
        assert!(parallel(&b3.psi_plus, &[c(0.0, 0.0), c(1.0, 0.0)]));
        assert!(parallel(&b3.psi_minus, &[c(1.0, 0.0), c(0.0, 0.0)]));
        assert_eq!(te.invariants().len(), 24);
        for k in 0..3 {
            for p in Parity::BOTH {
                assert!((te.sigma(k, k, p, p) - c(1.0, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn third_rule_linearity() {
        let te = TriadEigen::from_triad(&pauli_triad()).unwrap();
        let two = c(2.0, 0.0);
        let b1 = te.bundles[0].rescaled(Parity::Plus, two);
        let b2 = te.bundles[1].rescaled(Parity::Plus, two);
        let raw = third_eigenfunctions_raw(&te.bundles[0], &te.bundles[1]);
        let raw2 = third_eigenfunctions_raw(&b1, &b2);
        for j in 0..2 {
            assert!((raw2.psi_plus[j] - raw.psi_plus[j] * 2.0).norm() < 1e-14);
            assert!((raw2.phi_plus[j] - raw.phi_plus[j] * 0.5).norm() < 1e-14);
        }
        // canonical bundles of q1, q2 without the phase alignment do not combine
        let b2c = eigen_bundle(&pauli_triad().q[1]).unwrap();
        let b3 = third_eigenfunctions(&te.bundles[0], &b2c.rescaled(Parity::Plus, c(0.0, 1.0)));
        assert!(matches!(b3, Err(Error::PhaseConvention { .. })));
    }

    #[test]
    fn projections_on_own_basis() {
        let t = pauli_triad();
        let te = TriadEigen::from_triad(&t).unwrap();
        for k in 0..3 {
            for n in 0..3 {
                for p in Parity::BOTH {
                    let v = project_matrix(&t.q[n], &te.bundles[k], p);
                    let expect = if k == n { 1.0 } else { 0.0 };
                    assert!((v - c(expect, 0.0)).norm() < 1e-13);
                }
            }
        }
        let three = project_qvector(&[3.0, 0.0, 0.0], &t, &te.bundles[0], Parity::Plus);
        assert!((three - c(3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn rotated_basis_projection() {
        let alpha = 0.8_f64;
        let t = pauli_triad();
        let rotated = vector_transform(&rotor_from_real_angles(alpha, 0.0, 0.0), &t);
        let b1 = eigen_bundle(&t.q[0]).unwrap();
        let v = project_matrix(&rotated.q[0], &b1, Parity::Plus);
        assert!((v - c(alpha.cos(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn invalid_unit_rejected() {
        assert!(eigen_bundle(&CMatrix::identity(2)).is_err());
        assert!(eigen_bundle(&pauli_sigma()[0].scale_re(2.0)).is_err());
    }

    #[test]
    fn random_triads_and_spinor_invariance() {
        use crate::random::{sl2c, traceless_pair};
        use crate::rep::triad_from_traceless;
        use crate::transform::spinor_transform;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let t = triad_from_traceless(&traceless_pair(&mut rng)).unwrap();
            let te = TriadEigen::from_triad(&t).unwrap();
            assert!(te.max_residual(&t) < 1e-9, "{}", te.max_residual(&t));
            let u = sl2c(&mut rng);
            let moved = spinor_transform(&u, &t).unwrap();
            let te2 = TriadEigen::from_triad(&moved).unwrap();
            let carried = te.transformed(u.matrix(), u.inverse_matrix());
            assert!(carried.max_residual(&moved) < 1e-9);
            for (a, b) in te.invariants().iter().zip(carried.invariants()) {
                assert!((a.value - b.value).norm() < 1e-9);
            }
            for k in 0..3 {
                for n in 0..3 {
                    for p in Parity::BOTH {
                        let d = (te.sigma(k, n, p, p) - te2.sigma(k, n, p, p)).norm();
                        assert!(d < 1e-9, "k={k} n={n} d={d}");
                    }
                }
            }
        }
    }
}
