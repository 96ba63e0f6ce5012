//! Newtonian dynamics written in a rotating triad.
//!
//! The frame is `q = O q~` with `Omega_kn = (dO/dt O^T)_kn = epsilon_knj Omega_j`. Frame
//! components `x` of the position obey
//! `x'' + 2 Omega x x' + Omega' x x + Omega x (Omega x x) = F / m`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{integrate, IntegrationFailure, OdeOptions, Solution};

pub type Vec3 = [f64; 3];

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn dot3(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3(a: &Vec3) -> f64 {
    dot3(a, a).sqrt()
}

fn axpy(a: f64, x: &Vec3, y: &Vec3) -> Vec3 {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]]
}

/// `Omega_kn = epsilon_knj Omega_j` as a real 3x3 array.
pub fn omega_matrix(w: &Vec3) -> [[f64; 3]; 3] {
    [[0.0, w[2], -w[1]], [-w[2], 0.0, w[0]], [w[1], -w[0], 0.0]]
}

/// `Omega_j = 1/2 epsilon_knj Omega_kn`.
pub fn omega_vector(m: &[[f64; 3]; 3]) -> Vec3 {
    [
        0.5 * (m[1][2] - m[2][1]),
        0.5 * (m[2][0] - m[0][2]),
        0.5 * (m[0][1] - m[1][0]),
    ]
}

type RateFn = dyn Fn(f64) -> (Vec3, Vec3) + Send + Sync;
type ForceFn = dyn Fn(f64, &Vec3, &Vec3) -> Vec3 + Send + Sync;

/// `Omega(t)` together with its time derivative.
#[derive(Clone)]
pub struct AngularProgram(Arc<RateFn>);

impl std::fmt::Debug for AngularProgram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (w, dw) = (self.0)(0.0);
        write!(f, "AngularProgram(Omega(0) = {w:?}, Omega'(0) = {dw:?})")
    }
}

/// Angle with its first two derivatives at a time.
pub type AngleFn = Arc<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;

impl AngularProgram {
    pub fn constant(w: Vec3) -> Self {
        Self(Arc::new(move |_| (w, [0.0; 3])))
    }

    pub fn from_fn(f: impl Fn(f64) -> (Vec3, Vec3) + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    /// Chasing frame driven by `alpha(t)`, `beta(t)` given with two derivatives:
    /// `Omega = (alpha' sin beta, -beta', alpha' cos beta)`.
    pub fn chasing(alpha: AngleFn, beta: AngleFn) -> Self {
        Self(Arc::new(move |t| {
            let (_, a1, a2) = alpha(t);
            let (b, b1, b2) = beta(t);
            chasing_rates(a1, a2, b, b1, b2)
        }))
    }

    /// Chasing frame from plain angle functions, differentiated by five-point stencils
    /// with step `h`.
    pub fn chasing_numeric(
        alpha: impl Fn(f64) -> f64 + Send + Sync + 'static,
        beta: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h: f64,
    ) -> Self {
        let diff = move |f: &dyn Fn(f64) -> f64, t: f64| {
            let (p1, m1, p2, m2, c0) = (f(t + h), f(t - h), f(t + 2.0 * h), f(t - 2.0 * h), f(t));
            let d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
            let d2 = (16.0 * (p1 + m1) - (p2 + m2) - 30.0 * c0) / (12.0 * h * h);
            (c0, d1, d2)
        };
        Self(Arc::new(move |t| {
            let (_, a1, a2) = diff(&alpha, t);
            let (b, b1, b2) = diff(&beta, t);
            chasing_rates(a1, a2, b, b1, b2)
        }))
    }

    pub fn at(&self, t: f64) -> (Vec3, Vec3) {
        (self.0)(t)
    }
}

/// `Omega` and `Omega'` of the chasing frame `O = R_2^{-beta} R_3^{alpha}`.
pub fn chasing_rates(a1: f64, a2: f64, b: f64, b1: f64, b2: f64) -> (Vec3, Vec3) {
    let (sb, cb) = b.sin_cos();
    let w = [a1 * sb, -b1, a1 * cb];
    let dw = [a2 * sb + a1 * b1 * cb, -b2, a2 * cb - a1 * b1 * sb];
    (w, dw)
}

/// Force law in frame components, `F(t, x, v)`.
#[derive(Clone)]
pub struct ForceLaw(Arc<ForceFn>);

impl std::fmt::Debug for ForceLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ForceLaw")
    }
}

impl ForceLaw {
    pub fn zero() -> Self {
        Self(Arc::new(|_, _, _| [0.0; 3]))
    }

    pub fn new(f: impl Fn(f64, &Vec3, &Vec3) -> Vec3 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    /// Isotropic spring `-k x` towards the origin; the same law in every frame.
    pub fn central_spring(k: f64) -> Self {
        Self::new(move |_, x, _| x.map(|c| -k * c))
    }

    pub fn eval(&self, t: f64, x: &Vec3, v: &Vec3) -> Vec3 {
        (self.0)(t, x, v)
    }
}

#[derive(Debug, Clone)]
pub struct RotatingFrameSpec {
    pub omega: AngularProgram,
    pub mass: f64,
    pub force: ForceLaw,
}

/// The four acceleration terms; their sum is `F / m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelTerms {
    /// `x''`
    pub linear: Vec3,
    /// `2 Omega x v`
    pub coriolis: Vec3,
    /// `Omega' x x`
    pub angular: Vec3,
    /// `Omega x (Omega x x)`
    pub centripetal: Vec3,
}

impl AccelTerms {
    pub fn sum(&self) -> Vec3 {
        [0, 1, 2].map(|i| self.linear[i] + self.coriolis[i] + self.angular[i] + self.centripetal[i])
    }
}

impl RotatingFrameSpec {
    pub fn terms(&self, t: f64, x: &Vec3, v: &Vec3) -> AccelTerms {
        let (w, dw) = self.omega.at(t);
        let f = self.force.eval(t, x, v);
        let coriolis = cross(&w, v).map(|c| 2.0 * c);
        let angular = cross(&dw, x);
        let centripetal = cross(&w, &cross(&w, x));
        let linear = [0, 1, 2].map(|i| f[i] / self.mass - coriolis[i] - angular[i] - centripetal[i]);
        AccelTerms {
            linear,
            coriolis,
            angular,
            centripetal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::InvalidArgument(format!("mass must be positive, got {}", self.mass)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub x: Vec<Vec3>,
    pub v: Vec<Vec3>,
    pub diagnostics: Vec<AccelTerms>,
}

impl Trajectory {
    fn from_solution(spec: &RotatingFrameSpec, sol: &Solution) -> Self {
        let mut out = Trajectory {
            t: sol.t.clone(),
            x: vec![],
            v: vec![],
            diagnostics: vec![],
        };
        for (t, y) in sol.t.iter().zip(&sol.y) {
            let x = [y[0], y[1], y[2]];
            let v = [y[3], y[4], y[5]];
            out.diagnostics.push(spec.terms(*t, &x, &v));
            out.x.push(x);
            out.v.push(v);
        }
        out
    }

    /// `max |sum of terms - F/m|` over the samples.
    pub fn balance_residual(&self, spec: &RotatingFrameSpec) -> f64 {
        let mut worst = 0.0_f64;
        for (i, d) in self.diagnostics.iter().enumerate() {
            let f = spec.force.eval(self.t[i], &self.x[i], &self.v[i]);
            let s = d.sum();
            for j in 0..3 {
                worst = worst.max((s[j] - f[j] / spec.mass).abs());
            }
        }
        worst
    }
}

/// Integration failure with the trajectory computed up to that point.
#[derive(Debug, Clone, PartialEq)]
pub struct MechFailure {
    pub t: f64,
    pub reason: String,
    pub partial: Trajectory,
}

impl std::fmt::Display for MechFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "integration failed at t = {}: {} ({} samples kept)", self.t, self.reason, self.partial.t.len())
    }
}

impl std::error::Error for MechFailure {}

impl From<MechFailure> for Error {
    fn from(f: MechFailure) -> Self {
        Error::Integration {
            t: f.t,
            reason: f.reason,
        }
    }
}

/// Integrate the frame equation, sampling at `times` (strictly increasing).
pub fn integrate_rotating_frame(
    spec: &RotatingFrameSpec,
    x0: Vec3,
    v0: Vec3,
    times: &[f64],
    opts: OdeOptions,
) -> std::result::Result<Trajectory, MechFailure> {
    if let Err(e) = spec.validate() {
        return Err(MechFailure {
            t: times.first().copied().unwrap_or(0.0),
            reason: e.to_string(),
            partial: Trajectory {
                t: vec![],
                x: vec![],
                v: vec![],
                diagnostics: vec![],
            },
        });
    }
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let x = [y[0], y[1], y[2]];
        let v = [y[3], y[4], y[5]];
        let a = spec.terms(t, &x, &v).linear;
        dy[..3].copy_from_slice(&v);
        dy[3..].copy_from_slice(&a);
    };
    let y0 = [x0[0], x0[1], x0[2], v0[0], v0[1], v0[2]];
    match integrate(rhs, &y0, times, opts) {
        Ok(sol) => Ok(Trajectory::from_solution(spec, &sol)),
        Err(IntegrationFailure { t, reason, partial }) => Err(MechFailure {
            t,
            reason,
            partial: Trajectory::from_solution(spec, &partial),
        }),
    }
}

pub type Mat3 = [[f64; 3]; 3];

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|i| dot3(&m[i], v))
}

pub fn mat_t_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|j| m[0][j] * v[0] + m[1][j] * v[1] + m[2][j] * v[2])
}

/// Accumulated rotor from `dO/dt = Omega(t) O`, `O(t0) = o0`, at `times`.
pub fn accumulate_rotor(program: &AngularProgram, o0: Mat3, times: &[f64], opts: OdeOptions) -> Result<Vec<Mat3>> {
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| {
        let w = omega_matrix(&program.at(t).0);
        for i in 0..3 {
            for j in 0..3 {
                dy[3 * i + j] = (0..3).map(|k| w[i][k] * y[3 * k + j]).sum();
            }
        }
    };
    let y0: Vec<f64> = o0.iter().flatten().copied().collect();
    let sol = integrate(rhs, &y0, times, opts)?;
    Ok(sol
        .y
        .iter()
        .map(|y| [[y[0], y[1], y[2]], [y[3], y[4], y[5]], [y[6], y[7], y[8]]])
        .collect())
}

/// Fixed-triad position and velocity `X = O^T x`, `X' = O^T (x' + Omega x x)`.
pub fn to_inertial(traj: &Trajectory, program: &AngularProgram, rotors: &[Mat3]) -> Vec<(Vec3, Vec3)> {
    traj.t
        .iter()
        .zip(traj.x.iter().zip(&traj.v))
        .zip(rotors)
        .map(|((t, (x, v)), o)| {
            let w = program.at(*t).0;
            let vin = axpy(1.0, &cross(&w, x), v);
            (mat_t_vec(o, x), mat_t_vec(o, &vin))
        })
        .collect()
}

/// Jacobi integral per unit mass, `1/2 |v|^2 - 1/2 |Omega x x|^2`; conserved for `F = 0`
/// and constant `Omega`.
pub fn jacobi_integral(w: &Vec3, x: &Vec3, v: &Vec3) -> f64 {
    let wx = cross(w, x);
    0.5 * dot3(v, v) - 0.5 * dot3(&wx, &wx)
}

/// Force (over mass) needed to hold a particle at rest at `x`: `Omega x (Omega x x)`.
pub fn holding_force(mass: f64, w: &Vec3, x: &Vec3) -> Vec3 {
    cross(w, &cross(w, x)).map(|c| mass * c)
}

/// Radial state of the chasing frame, whose first unit points at the particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChasingState {
    pub r: f64,
    pub r_dot: f64,
    pub r_ddot: f64,
    pub omega: Vec3,
    pub omega_dot: Vec3,
}

/// `F/m` components required by the three chasing-frame equations:
/// `r'' - r (W2^2 + W3^2)`, `2 r' W3 + r W3' + r W1 W2`, `-2 r' W2 - r W2' + r W1 W3`.
pub fn chasing_equations(s: &ChasingState) -> Vec3 {
    let [w1, w2, w3] = s.omega;
    let [_, dw2, dw3] = s.omega_dot;
    [
        s.r_ddot - s.r * (w2 * w2 + w3 * w3),
        2.0 * s.r_dot * w3 + s.r * dw3 + s.r * w1 * w2,
        -2.0 * s.r_dot * w2 - s.r * dw2 + s.r * w1 * w3,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Harmonic,
    Polynomial,
    Exponential,
}

/// Closed-form radial motion of a bead on a rod spinning at `omega`, tied to the axis by
/// a spring of stiffness `k` and rest length `l`: `r'' - r omega^2 = -(k/m)(r - l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSolution {
    pub mass: f64,
    pub k: f64,
    pub omega: f64,
    pub l: f64,
    pub r0: f64,
    pub v0: f64,
    pub regime: Regime,
    /// `sqrt(|k/m - omega^2|)`; zero in the polynomial regime.
    pub rate: f64,
    /// Equilibrium offset of the harmonic/exponential forms.
    pub r_eq: f64,
    pub a: f64,
    pub b: f64,
}

/// Relative width of the polynomial regime around `omega^2 = k/m`.
pub const REGIME_TOL: f64 = 1e-12;

pub fn rotating_oscillator(mass: f64, k: f64, omega: f64, l: f64, r0: f64, v0: f64) -> Result<OscillatorSolution> {
    if !(mass > 0.0) || !(k > 0.0) || !(omega >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need m > 0, k > 0, omega >= 0 (got m = {mass}, k = {k}, omega = {omega})"
        )));
    }
    let km = k / mass;
    let d = km - omega * omega;
    let mut s = OscillatorSolution {
        mass,
        k,
        omega,
        l,
        r0,
        v0,
        regime: Regime::Polynomial,
        rate: 0.0,
        r_eq: 0.0,
        a: 0.0,
        b: 0.0,
    };
    if d.abs() <= REGIME_TOL * km {
        // r = r0 + v0 t + (k/m) l t^2 / 2
        s.a = v0;
        s.b = 0.5 * km * l;
    } else if d > 0.0 {
        let w = d.sqrt();
        s.regime = Regime::Harmonic;
        s.rate = w;
        s.r_eq = km * l / d;
        s.a = r0 - s.r_eq;
        s.b = v0 / w;
    } else {
        let kappa = (-d).sqrt();
        s.regime = Regime::Exponential;
        s.rate = kappa;
        s.r_eq = km * l / d;
        s.a = 0.5 * (r0 - s.r_eq + v0 / kappa);
        s.b = 0.5 * (r0 - s.r_eq - v0 / kappa);
    }
    Ok(s)
}

impl OscillatorSolution {
    pub fn r(&self, t: f64) -> f64 {
        match self.regime {
            Regime::Polynomial => self.r0 + self.a * t + self.b * t * t,
            Regime::Harmonic => self.r_eq + self.a * (self.rate * t).cos() + self.b * (self.rate * t).sin(),
            Regime::Exponential => self.r_eq + self.a * (self.rate * t).exp() + self.b * (-self.rate * t).exp(),
        }
    }

    pub fn r_dot(&self, t: f64) -> f64 {
        let w = self.rate;
        match self.regime {
            Regime::Polynomial => self.a + 2.0 * self.b * t,
            Regime::Harmonic => w * (-self.a * (w * t).sin() + self.b * (w * t).cos()),
            Regime::Exponential => w * (self.a * (w * t).exp() - self.b * (-w * t).exp()),
        }
    }

    /// Tangential reaction of the rod, `2 m r' omega`.
    pub fn rod_force(&self, t: f64) -> f64 {
        2.0 * self.mass * self.r_dot(t) * self.omega
    }

    /// A time scale for comparisons: the period in the harmonic regime, `2 pi / rate`
    /// in the exponential one, and `2 pi / omega` (or 1) in the polynomial one.
    pub fn characteristic_time(&self) -> f64 {
        match self.regime {
            Regime::Polynomial if self.omega > 0.0 => 2.0 * PI / self.omega,
            Regime::Polynomial => 1.0,
            _ => 2.0 * PI / self.rate,
        }
    }

    /// Frame specification reproducing this motion in the planar chasing frame.
    pub fn frame_spec(&self) -> RotatingFrameSpec {
        let (m, k, l, w) = (self.mass, self.k, self.l, self.omega);
        RotatingFrameSpec {
            omega: AngularProgram::constant([0.0, 0.0, w]),
            mass: m,
            // radial spring and the rod reaction that keeps the bead on the rod
            force: ForceLaw::new(move |_, x, v| [-k * (x[0] - l), 2.0 * m * v[0] * w, 0.0]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::linspace;

    fn tight() -> OdeOptions {
        OdeOptions::with_tol(1e-12, 1e-12)
    }

    #[test]
    fn omega_matrix_roundtrip() {
        let w = [0.3, -1.2, 2.5];
        assert_eq!(omega_vector(&omega_matrix(&w)), w);
        // Omega_kn x_n = -(Omega x x)_k
        let x = [1.0, 2.0, -0.5];
        let m = mat_vec(&omega_matrix(&w), &x);
        let c = cross(&w, &x);
        for i in 0..3 {
            assert!((m[i] + c[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn free_motion_without_rotation() {
        let spec = RotatingFrameSpec {
            omega: AngularProgram::constant([0.0; 3]),
            mass: 1.0,
            force: ForceLaw::zero(),
        };
        let ts = linspace(0.0, 3.0, 6);
        let tr = integrate_rotating_frame(&spec, [1.0, 0.0, 0.0], [0.5, -1.0, 2.0], &ts, tight()).unwrap();
        for (t, x) in tr.t.iter().zip(&tr.x) {
            assert!((x[0] - 1.0 - 0.5 * t).abs() < 1e-12);
            assert!((x[2] - 2.0 * t).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_rotation_maps_straight_line() {
        let w3 = 1.3;
        let spec = RotatingFrameSpec {
            omega: AngularProgram::constant([0.0, 0.0, w3]),
            mass: 2.0,
            force: ForceLaw::zero(),
        };
        let period = 2.0 * PI / w3;
        let ts = linspace(0.0, 10.0 * period, 200);
        let x0 = [1.0, 0.5, 0.2];
        let v0 = [0.1, -0.3, 0.05];
        let tr = integrate_rotating_frame(&spec, x0, v0, &ts, tight()).unwrap();
        // inertial line X(t) = x0 + (v0 + Omega x x0) t, then x = R3(w t) X
        let vin = axpy(1.0, &cross(&[0.0, 0.0, w3], &x0), &v0);
        let mut worst = 0.0_f64;
        for (t, x) in tr.t.iter().zip(&tr.x) {
            let xi = axpy(*t, &vin, &x0);
            let (s, c) = (w3 * t).sin_cos();
            let expect = [c * xi[0] + s * xi[1], -s * xi[0] + c * xi[1], xi[2]];
            for j in 0..3 {
                worst = worst.max((x[j] - expect[j]).abs());
            }
        }
        assert!(worst < 1e-8, "{worst}");
        let j0 = jacobi_integral(&[0.0, 0.0, w3], &tr.x[0], &tr.v[0]);
        for (x, v) in tr.x.iter().zip(&tr.v) {
            assert!((jacobi_integral(&[0.0, 0.0, w3], x, v) - j0).abs() < 1e-8);
        }
        assert!(tr.balance_residual(&spec) < 1e-12);
    }

    #[test]
    fn held_particle_stays_put() {
        let w = [0.4, -0.2, 1.1];
        let x0 = [0.7, 0.3, -0.4];
        let m = 1.5;
        let hold = holding_force(m, &w, &x0);
        let spec = RotatingFrameSpec {
            omega: AngularProgram::constant(w),
            mass: m,
            force: ForceLaw::new(move |_, _, _| hold),
        };
        let tr = integrate_rotating_frame(&spec, x0, [0.0; 3], &linspace(0.0, 1.0, 4), tight()).unwrap();
        for x in &tr.x {
            for j in 0..3 {
                assert!((x[j] - x0[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chasing_mapping() {
        let (w, _) = chasing_rates(0.8, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(w, [0.0, 0.0, 0.8]);
        let (w, _) = chasing_rates(0.8, 0.0, 0.3, -0.5, 0.0);
        assert!((w[0] - 0.8 * 0.3_f64.sin()).abs() < 1e-15);
        assert_eq!(w[1], 0.5);
        assert!((w[2] - 0.8 * 0.3_f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn chasing_equations_match_general_form() {
        let (w, dw) = chasing_rates(0.7, -0.2, 0.4, 0.3, 0.1);
        let s = ChasingState {
            r: 1.7,
            r_dot: -0.4,
            r_ddot: 0.9,
            omega: w,
            omega_dot: dw,
        };
        // general equation with x = (r, 0, 0) and Omega' supplied separately
        let x = [s.r, 0.0, 0.0];
        let v = [s.r_dot, 0.0, 0.0];
        let cor = cross(&w, &v).map(|c| 2.0 * c);
        let ang = cross(&dw, &x);
        let cen = cross(&w, &cross(&w, &x));
        let general = [0, 1, 2].map(|i| [s.r_ddot, 0.0, 0.0][i] + cor[i] + ang[i] + cen[i]);
        let chased = chasing_equations(&s);
        for i in 0..3 {
            assert!((general[i] - chased[i]).abs() < 1e-14);
        }
        let planar = chasing_equations(&ChasingState {
            omega: [0.0, 0.0, 2.0],
            omega_dot: [0.0; 3],
            ..s
        });
        assert!((planar[0] - (s.r_ddot - 4.0 * s.r)).abs() < 1e-15);
    }

    #[test]
    fn oscillator_regimes() {
        let s = rotating_oscillator(1.0, 4.0, 1.0, 0.5, 1.0, 0.0).unwrap();
        assert_eq!(s.regime, Regime::Harmonic);
        assert!((s.rate - 3f64.sqrt()).abs() < 1e-15);
        let s = rotating_oscillator(2.0, 2.0, 1.0, 0.0, 0.3, 0.2).unwrap();
        assert_eq!(s.regime, Regime::Polynomial);
        assert!((s.r(2.0) - 0.7).abs() < 1e-15);
        let s = rotating_oscillator(1.0, 1.0, 2.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(s.regime, Regime::Exponential);
        assert!(s.a > 0.0 && s.r(5.0) > 1e3);
        assert!(rotating_oscillator(0.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn oscillator_analytic_vs_numeric() {
        for (k, w) in [(4.0, 1.0), (1.0, 1.0), (1.0, 1.5)] {
            let s = rotating_oscillator(1.0, k, w, 0.4, 1.0, 0.3).unwrap();
            let spec = s.frame_spec();
            let ts = linspace(0.0, 10.0 * s.characteristic_time().min(10.0), 100);
            let tr = integrate_rotating_frame(&spec, [s.r0, 0.0, 0.0], [s.v0, 0.0, 0.0], &ts, tight()).unwrap();
            for (t, x) in tr.t.iter().zip(&tr.x) {
                let r = s.r(*t);
                assert!((x[0] - r).abs() <= 1e-8 * r.abs().max(1.0), "k={k} w={w} t={t}");
                assert!(x[1].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn varying_rotation_matches_inertial_oracle() {
        // Omega(t) = (0.3 sin t, 0.2, 1 + 0.5 cos 0.7t), central spring with k/m = 2
        let program = AngularProgram::from_fn(|t: f64| {
            (
                [0.3 * t.sin(), 0.2, 1.0 + 0.5 * (0.7 * t).cos()],
                [0.3 * t.cos(), 0.0, -0.35 * (0.7 * t).sin()],
            )
        });
        let spec = RotatingFrameSpec {
            omega: program.clone(),
            mass: 0.5,
            force: ForceLaw::central_spring(1.0),
        };
        let ts = linspace(0.0, 10.0 * 2.0 * PI, 100);
        let ident = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let x0 = [1.0, 0.0, 0.5];
        let v0 = [0.0, 0.4, 0.0];
        let tr = integrate_rotating_frame(&spec, x0, v0, &ts, tight()).unwrap();
        let rotors = accumulate_rotor(&program, ident, &ts, tight()).unwrap();
        let inertial = to_inertial(&tr, &program, &rotors);
        let w = 2f64.sqrt();
        let vin0 = inertial[0].1;
        let mut worst = 0.0_f64;
        for (t, (xi, _)) in ts.iter().zip(&inertial) {
            for j in 0..3 {
                let exact = x0[j] * (w * t).cos() + vin0[j] / w * (w * t).sin();
                worst = worst.max((xi[j] - exact).abs());
            }
        }
        assert!(worst < 1e-7, "{worst}");
    }
}
