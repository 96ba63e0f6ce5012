//! Connection of a moving triad over a parameter grid, its transformation law, Frenet
//! frames and curvature.
//!
//! The connection is defined by `dq_k/dPhi_x = omega_{x,kn} q_n`. It is computed from the
//! triad itself (eigenfunction projection of the derivative), from a spinor field
//! `q_k = U q~_k U^-1` or from a rotor field `q_k = O_kn q~_n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::epsilon;
use crate::eigen::{eigen_bundle, project_matrix, EigenBundle, Parity};
use crate::error::{Error, Result};
use crate::grid::{derivative, second_derivative, DiffOptions, Field, Grid, Linear, STENCIL_MARGIN};
use crate::matrix::{c, CMatrix};
use crate::rep::{pauli_triad, require_triad, UnitTriad};
use crate::tol;
use crate::transform::{elementary, elementary_derivative, rotor_from_angles, Axis, Rotor, SpinorMap};

/// `omega[point][xi]`, a 3x3 matrix in the vector indices `(k, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionField {
    pub grid: Grid,
    pub values: Vec<Vec<CMatrix>>,
}

impl ConnectionField {
    pub fn zeros(grid: Grid) -> Self {
        let g = grid.dim();
        let values = vec![vec![CMatrix::zeros(3); g]; grid.len()];
        Self { grid, values }
    }

    pub fn params(&self) -> usize {
        self.grid.dim()
    }

    pub fn omega(&self, point: usize, xi: usize) -> &CMatrix {
        &self.values[point][xi]
    }

    /// Independent components `G p (p-1) / 2` with `p = 3`.
    pub fn independent_components(&self) -> usize {
        self.params() * 3
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |m, w| m.max((w + &w.transpose()).max_abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, w| m.max(w.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &ConnectionField) -> Result<f64> {
        if !self.grid.compatible(&other.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .fold(0.0, |m, (a, b)| m.max(a.max_abs_diff(b))))
    }

    /// `Omega_kn = omega_{x,kn} dPhi_x/dt` for a path through the grid point.
    pub fn contract(&self, point: usize, dphi: &[f64]) -> CMatrix {
        let parts: Vec<(f64, &CMatrix)> = dphi.iter().zip(&self.values[point]).map(|(w, m)| (*w, m)).collect();
        CMatrix::lincomb(&parts)
    }

    /// Component `xi` as a matrix field.
    pub fn component(&self, xi: usize) -> Field<CMatrix> {
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v[xi].clone()).collect(),
        }
    }

    /// The antisymmetric part; removes round-off asymmetry of numerical routes.
    pub fn antisymmetrized(&self) -> ConnectionField {
        ConnectionField {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|w| (w - &w.transpose()).scale_re(0.5)).collect())
                .collect(),
        }
    }

    /// `Omega_j = 1/2 epsilon_knj Omega_kn`.
    pub fn dual(&self, point: usize, xi: usize) -> [Complex64; 3] {
        dual_vector(&self.values[point][xi])
    }
}

pub fn dual_vector(w: &CMatrix) -> [Complex64; 3] {
    let mut out = [c(0.0, 0.0); 3];
    for (j, slot) in out.iter_mut().enumerate() {
        for k in 0..3 {
            for n in 0..3 {
                let e = epsilon(k, n, j);
                if e != 0.0 {
                    *slot += w[(k, n)] * (0.5 * e);
                }
            }
        }
    }
    out
}

/// Inverse of [`dual_vector`]: `Omega_kn = epsilon_knj Omega_j`.
pub fn from_dual(v: &[Complex64; 3]) -> CMatrix {
    CMatrix::from_fn(3, |k, n| (0..3).map(|j| v[j] * epsilon(k, n, j)).sum())
}

fn check_triad_field(field: &Field<UnitTriad>) -> Result<()> {
    for t in &field.values {
        if t.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: t.dim(),
            });
        }
        require_triad(t, tol::MATRIX * 1e3)?;
    }
    Ok(())
}

/// `omega_{x,kn} = <dq_k/dPhi_x>_n`, the `n`-th projection of the derivative of `q_k`.
pub fn connection_from_basis(field: &Field<UnitTriad>, opts: DiffOptions) -> Result<ConnectionField> {
    check_triad_field(field)?;
    let g = field.grid.dim();
    let derivs = (0..g)
        .map(|xi| derivative(field, xi, opts))
        .collect::<Result<Vec<_>>>()?;
    let sub = derivs[0].grid.clone();
    let mut values = Vec::with_capacity(sub.len());
    for i in 0..sub.len() {
        let t = field.at_interior(&sub, i, STENCIL_MARGIN);
        let bundles = [0, 1, 2].map(|n| eigen_bundle(&t.q[n]));
        let bundles: [EigenBundle; 3] = match bundles {
            [Ok(a), Ok(b), Ok(c_)] => [a, b, c_],
            [Err(e), _, _] | [_, Err(e), _] | [_, _, Err(e)] => return Err(e),
        };
        let per_xi = derivs
            .iter()
            .map(|d| {
                let dq = &d.values[i];
                CMatrix::from_fn(3, |k, n| project_matrix(&dq.q[k], &bundles[n], Parity::Plus))
            })
            .collect();
        values.push(per_xi);
    }
    Ok(ConnectionField { grid: sub, values })
}

/// Connection of `q_k = U q~_k U^-1` from `<[U^-1 dU, q~_k]>_n`, projected with the
/// eigenfunctions of the constant reference triad `q~`.
pub fn connection_from_spinor(
    u: &Field<CMatrix>,
    reference: &UnitTriad,
    opts: DiffOptions,
) -> Result<ConnectionField> {
    let refb = [0, 1, 2]
        .map(|n| eigen_bundle(&reference.q[n]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let inverses = u
        .values
        .iter()
        .map(|m| SpinorMap::new(m.clone()).map(|s| s.inverse_matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    let inv_field = Field {
        grid: u.grid.clone(),
        values: inverses,
    };
    let g = u.grid.dim();
    let derivs = (0..g)
        .map(|xi| derivative(u, xi, opts))
        .collect::<Result<Vec<_>>>()?;
    let sub = derivs[0].grid.clone();
    let mut values = Vec::with_capacity(sub.len());
    for i in 0..sub.len() {
        let u_inv = inv_field.at_interior(&sub, i, STENCIL_MARGIN);
        let per_xi = derivs
            .iter()
            .map(|d| {
                let a = u_inv * &d.values[i];
                CMatrix::from_fn(3, |k, n| {
                    let comm = &(&a * &reference.q[k]) - &(&reference.q[k] * &a);
                    project_matrix(&comm, &refb[n], Parity::Plus)
                })
            })
            .collect();
        values.push(per_xi);
    }
    Ok(ConnectionField { grid: sub, values })
}

/// `omega_x = (dO/dPhi_x) O^T`.
pub fn connection_from_rotor(o: &Field<CMatrix>, opts: DiffOptions) -> Result<ConnectionField> {
    for m in &o.values {
        Rotor::with_tolerance(m.clone(), tol::MATRIX * 1e3)?;
    }
    let g = o.grid.dim();
    let derivs = (0..g)
        .map(|xi| derivative(o, xi, opts))
        .collect::<Result<Vec<_>>>()?;
    let sub = derivs[0].grid.clone();
    let values = (0..sub.len())
        .map(|i| {
            let ot = o.at_interior(&sub, i, STENCIL_MARGIN).transpose();
            derivs.iter().map(|d| &d.values[i] * &ot).collect()
        })
        .collect();
    Ok(ConnectionField { grid: sub, values })
}

/// Connection of `q = O q'` given the connection `omega'` of `q'`:
/// `omega = O omega' O^T + dO O^T`.
///
/// `o` lives on the full grid, `omega'` on its interior.
pub fn transform_connection(
    o: &Field<CMatrix>,
    omega: &ConnectionField,
    opts: DiffOptions,
) -> Result<ConnectionField> {
    let sub = o.grid.interior(STENCIL_MARGIN)?;
    if !sub.compatible(&omega.grid) {
        return Err(Error::GridMismatch);
    }
    let inhom = connection_from_rotor(o, opts)?;
    let values = (0..sub.len())
        .map(|i| {
            let om = o.at_interior(&sub, i, STENCIL_MARGIN);
            let omt = om.transpose();
            omega.values[i]
                .iter()
                .zip(&inhom.values[i])
                .map(|(w, d)| &(&(om * w) * &omt) + d)
                .collect()
        })
        .collect();
    Ok(ConnectionField { grid: sub, values })
}

/// Triad with `q1 = -i sigma_3`, `q2 = (0, -e^{-i gamma}; e^{i gamma}, 0)`, `q3 = q1 q2`.
pub fn twisted_line_triad(gamma: f64) -> UnitTriad {
    let z = c(0.0, 0.0);
    let q1 = pauli_triad().q[2].clone();
    let q2 = CMatrix::m2(z, -Complex64::from_polar(1.0, -gamma), Complex64::from_polar(1.0, gamma), z);
    let q3 = &q1 * &q2;
    UnitTriad::new(q1, q2, q3)
}

/// Smooth complex angle functions `A, B, G` on a parameter space, each a sum of
/// `amp * sin(wave . x + phase)`; the rotor is `O_3^A O_2^B O_1^G`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnglePath {
    pub terms: [Vec<AngleTerm>; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleTerm {
    pub amp: Complex64,
    pub wave: Vec<f64>,
    pub phase: f64,
}

impl AngleTerm {
    fn arg(&self, x: &[f64]) -> f64 {
        self.phase + self.wave.iter().zip(x).map(|(k, x)| k * x).sum::<f64>()
    }
}

impl AnglePath {
    pub fn angles(&self, x: &[f64]) -> [Complex64; 3] {
        self.terms
            .clone()
            .map(|ts| ts.iter().map(|t| t.amp * t.arg(x).sin()).sum())
    }

    pub fn angle_derivatives(&self, x: &[f64], axis: usize) -> [Complex64; 3] {
        self.terms
            .clone()
            .map(|ts| ts.iter().map(|t| t.amp * t.wave[axis] * t.arg(x).cos()).sum())
    }

    pub fn rotor(&self, x: &[f64]) -> Rotor {
        let [a, b, g] = self.angles(x);
        rotor_from_angles(a, b, g)
    }

    /// The spinor whose action equals [`AnglePath::rotor`].
    pub fn spinor(&self, x: &[f64]) -> SpinorMap {
        let [a, b, g] = self.angles(x);
        SpinorMap::rotation(Axis::One, g)
            .compose(&SpinorMap::rotation(Axis::Two, b))
            .compose(&SpinorMap::rotation(Axis::Three, a))
    }

    /// `dO/dx_axis` by the product rule.
    pub fn rotor_derivative(&self, x: &[f64], axis: usize) -> CMatrix {
        let [a, b, g] = self.angles(x);
        let [da, db, dg] = self.angle_derivatives(x, axis);
        let (o3, o2, o1) = (elementary(Axis::Three, a), elementary(Axis::Two, b), elementary(Axis::One, g));
        let t1 = &(&elementary_derivative(Axis::Three, a).scale(da) * &o2) * &o1;
        let t2 = &(&o3 * &elementary_derivative(Axis::Two, b).scale(db)) * &o1;
        let t3 = &(&o3 * &o2) * &elementary_derivative(Axis::One, g).scale(dg);
        &(&t1 + &t2) + &t3
    }

    /// Exact connection `dO O^T` on the points of `grid`.
    pub fn analytic_connection(&self, grid: &Grid) -> ConnectionField {
        let values = (0..grid.len())
            .map(|i| {
                let x = grid.coords(i);
                let ot = self.rotor(&x).matrix().transpose();
                (0..grid.dim()).map(|a| &self.rotor_derivative(&x, a) * &ot).collect()
            })
            .collect();
        ConnectionField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn rotor_field(&self, grid: &Grid) -> Field<CMatrix> {
        Field::sample(grid, |x| self.rotor(x).matrix().clone())
    }

    pub fn spinor_field(&self, grid: &Grid) -> Field<CMatrix> {
        Field::sample(grid, |x| self.spinor(x).matrix().clone())
    }

    /// `q_k = O_kn q~_n` with the standard triad.
    pub fn triad_field(&self, grid: &Grid) -> Field<UnitTriad> {
        let q = pauli_triad();
        Field::sample(grid, |x| crate::transform::vector_transform(&self.rotor(x), &q))
    }
}

/// Output of [`frenet_frame`]; all vectors share `grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    /// Triad `q_k = e_k . q~` with `(e_1, e_2, e_3)` = (tangent, normal, binormal).
    pub triads: Field<UnitTriad>,
    /// Grid of the curvature outputs (interior of the triad grid).
    pub grid: Grid,
    /// First curvature `Omega_12`.
    pub r1: Vec<f64>,
    /// Second curvature `Omega_23`; `None` where the curvature is below tolerance.
    pub r2: Vec<Option<f64>>,
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm3(a: &[f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn any_perpendicular(t: &[f64; 3]) -> [f64; 3] {
    let pick = if t[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let v = cross(t, &pick);
    let n = norm3(&v);
    v.map(|x| x / n)
}

/// Frenet frame of an arclength-parameterized curve sampled on a 1-D grid.
///
/// `arclength_tol` bounds `| |dx/ds| - 1 |`; `curvature_tol` is the curvature below which
/// the normal is undefined (a fixed perpendicular is used and `r2` is `None`).
/// The frame involves a second derivative that is differentiated once more, so steps
/// near `1e-2` balance truncation against round-off better than `1e-3`.
pub fn frenet_frame(
    curve: &Field<[f64; 3]>,
    arclength_tol: f64,
    curvature_tol: f64,
) -> Result<FrenetFrame> {
    if curve.grid.dim() != 1 {
        return Err(Error::Grid("a curve needs a one-dimensional grid".into()));
    }
    let d1 = derivative(curve, 0, DiffOptions::unchecked(crate::grid::Stencil::Richardson))?;
    let d2 = second_derivative(curve, 0)?;
    let dev = d1.values.iter().fold(0.0_f64, |m, v| m.max((norm3(v) - 1.0).abs()));
    if dev > arclength_tol {
        return Err(Error::NotArclength { deviation: dev });
    }
    let q = pauli_triad();
    let mut kappa = Vec::with_capacity(d1.values.len());
    let triads = d1
        .values
        .iter()
        .zip(&d2.values)
        .map(|(t, a)| {
            let tn = norm3(t);
            let t = t.map(|x| x / tn);
            // remove the tangential part left by discretization
            let along = a[0] * t[0] + a[1] * t[1] + a[2] * t[2];
            let perp = [a[0] - along * t[0], a[1] - along * t[1], a[2] - along * t[2]];
            let k = norm3(&perp);
            kappa.push(k);
            let n = if k > curvature_tol { perp.map(|x| x / k) } else { any_perpendicular(&t) };
            let b = cross(&t, &n);
            UnitTriad::new(q.combine_real(&t), q.combine_real(&n), q.combine_real(&b))
        })
        .collect();
    let triads = Field {
        grid: d1.grid.clone(),
        values: triads,
    };
    let conn = connection_from_basis(&triads, DiffOptions::unchecked(crate::grid::Stencil::Richardson))?;
    let kappa_inner = Field {
        grid: d1.grid.clone(),
        values: kappa,
    }
    .restrict(STENCIL_MARGIN)?;
    let r1 = conn.values.iter().map(|w| w[0][(0, 1)].re).collect();
    let r2 = conn
        .values
        .iter()
        .zip(&kappa_inner.values)
        .map(|(w, &k)| (k > curvature_tol).then(|| w[0][(1, 2)].re))
        .collect();
    Ok(FrenetFrame {
        triads,
        grid: conn.grid,
        r1,
        r2,
    })
}

/// `r[point][a * G + b]`, a 3x3 matrix in `(k, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureField {
    pub grid: Grid,
    pub values: Vec<Vec<CMatrix>>,
}

impl CurvatureField {
    pub fn r(&self, point: usize, a: usize, b: usize) -> &CMatrix {
        &self.values[point][a * self.grid.dim() + b]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |m, r| m.max(r.max_abs()))
    }

    /// `max |r_ab + r_ba|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let g = self.grid.dim();
        let mut worst = 0.0_f64;
        for p in 0..self.grid.len() {
            for a in 0..g {
                for b in 0..g {
                    worst = worst.max((self.r(p, a, b) + self.r(p, b, a)).max_abs());
                }
            }
        }
        worst
    }
}

/// `r_ab = d_a Omega_b - d_b Omega_a + Omega_b Omega_a - Omega_a Omega_b` as matrices in the
/// vector indices, which vanishes identically for `Omega_a = d_a O O^T`.
pub fn curvature(conn: &ConnectionField, opts: DiffOptions) -> Result<CurvatureField> {
    let g = conn.grid.dim();
    let comps: Vec<Field<CMatrix>> = (0..g).map(|b| conn.component(b)).collect();
    // d[a][b] = d_a Omega_b
    let d = (0..g)
        .map(|a| comps.iter().map(|f| derivative(f, a, opts)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let sub = conn.grid.interior(STENCIL_MARGIN)?;
    let values = (0..sub.len())
        .map(|i| {
            let om: Vec<&CMatrix> = (0..g).map(|a| comps[a].at_interior(&sub, i, STENCIL_MARGIN)).collect();
            let mut out = Vec::with_capacity(g * g);
            for a in 0..g {
                for b in 0..g {
                    let lin = &d[a][b].values[i] - &d[b][a].values[i];
                    let quad = &(om[b] * om[a]) - &(om[a] * om[b]);
                    out.push(&lin + &quad);
                }
            }
            out
        })
        .collect();
    Ok(CurvatureField { grid: sub, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QSpaceReport {
    pub connection_norm: f64,
    pub curvature_norm: f64,
    pub curvature_present: bool,
    pub metric_compatible: bool,
    /// Any non-vanishing connection is reported as torsion-carrying.
    pub torsion_present: bool,
}

pub fn qspace_predicates(conn: &ConnectionField, curv: &CurvatureField, tol: f64) -> QSpaceReport {
    let connection_norm = conn.max_abs();
    let curvature_norm = curv.max_abs();
    let curvature_present = curvature_norm > tol;
    QSpaceReport {
        connection_norm,
        curvature_norm,
        curvature_present,
        metric_compatible: !curvature_present,
        torsion_present: connection_norm > tol,
    }
}
