//! Relativistic kinematics as rotations of a triad with hyperbolic (imaginary) angles.
//!
//! Units are `c = 1`. The first unit `q1` carries time: a clock at rest in a frame with
//! rotor `O` has `dt = Re(O_11) dt'` and moves with `V_n = Im(O_1n) / Re(O_11)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Biquaternion;
use crate::error::{Error, Result};
use crate::matrix::c;
use crate::ode::{integrate, OdeOptions};
use crate::rep::{pauli_triad, UnitTriad};
use crate::tol;
use crate::transform::{elementary, h_rotation, vector_transform, Axis, Rotor};

pub const C_LIGHT: f64 = 299_792_458.0;
pub const DAY: f64 = 86_400.0;
pub const JULIAN_YEAR: f64 = 365.25 * DAY;
pub const CENTURY: f64 = 100.0 * JULIAN_YEAR;
pub const ARCMIN: f64 = PI / (180.0 * 60.0);
pub const ARCSEC: f64 = PI / (180.0 * 3600.0);

/// Space-time interval `dz = (dx_k + i dt_k) q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BQInterval {
    pub dx: [f64; 3],
    pub dt: [f64; 3],
}

impl BQInterval {
    pub fn new(dx: [f64; 3], dt: [f64; 3]) -> Self {
        Self { dx, dt }
    }

    pub fn components(&self) -> [Complex64; 3] {
        [0, 1, 2].map(|k| c(self.dx[k], self.dt[k]))
    }

    pub fn from_components(u: &[Complex64; 3]) -> Self {
        Self {
            dx: u.map(|z| z.re),
            dt: u.map(|z| z.im),
        }
    }

    pub fn to_biquaternion(&self) -> Biquaternion {
        Biquaternion::new(c(0.0, 0.0), self.components())
    }

    /// `dx . dt`, zero for a well-formed interval.
    pub fn orthogonality_residual(&self) -> f64 {
        (0..3).map(|k| self.dx[k] * self.dt[k]).sum()
    }

    /// Components in the frame reached by `o`: `u' = O u`.
    pub fn transformed(&self, o: &Rotor) -> BQInterval {
        Self::from_components(&o.apply_components(&self.components()))
    }
}

fn sq(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// `dt^2 - dx^2`; positive for timelike intervals.
pub fn interval_square(i: &BQInterval) -> Result<f64> {
    let scale = sq(&i.dx).sqrt() * sq(&i.dt).sqrt();
    let r = i.orthogonality_residual();
    if r.abs() > tol::scaled(tol::MATRIX, scale) {
        return Err(Error::IntervalNotOrthogonal { residual: r });
    }
    Ok(sq(&i.dt) - sq(&i.dx))
}

/// Spatial directions available for boosts (the first unit is time).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoostAxis {
    Two,
    Three,
}

impl BoostAxis {
    pub fn from_number(n: usize) -> Result<BoostAxis> {
        match n {
            2 => Ok(BoostAxis::Two),
            3 => Ok(BoostAxis::Three),
            _ => Err(Error::InvalidArgument(format!(
                "boost direction must be 2 or 3 (1 is the time axis), got {n}"
            ))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            BoostAxis::Two => 1,
            BoostAxis::Three => 2,
        }
    }
}

/// Rotor moving the clock axis with rapidity `psi` along `dir`:
/// direction 2 is `H_3^psi`, direction 3 is `H_2^{-psi}`.
pub fn boost_rotor(dir: BoostAxis, psi: f64) -> Rotor {
    match dir {
        BoostAxis::Two => h_rotation(Axis::Three, psi),
        BoostAxis::Three => h_rotation(Axis::Two, -psi),
    }
}

/// A reference frame `Sigma = O Sigma_0` with its rotor history.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelFrame {
    pub rotor: Rotor,
    pub history: Vec<Rotor>,
}

impl Default for RelFrame {
    fn default() -> Self {
        Self::rest()
    }
}

impl RelFrame {
    pub fn rest() -> Self {
        Self {
            rotor: Rotor::identity(),
            history: vec![],
        }
    }

    pub fn triad(&self) -> UnitTriad {
        vector_transform(&self.rotor, &pauli_triad())
    }

    /// `dt / dt' = Re O_11 = cosh psi` for a single boost.
    pub fn clock_factor(&self) -> f64 {
        self.rotor.matrix()[(0, 0)].re
    }

    /// Velocity components along units 2 and 3 (the first is zero).
    pub fn velocity(&self) -> [f64; 3] {
        let m = self.rotor.matrix();
        let g = m[(0, 0)].re;
        [0.0, m[(0, 1)].im / g, m[(0, 2)].im / g]
    }

    pub fn speed(&self) -> f64 {
        sq(&self.velocity()).sqrt()
    }

    /// `cosh^2 psi - sinh^2 psi - 1` read off the first row.
    pub fn hyperbolic_residual(&self) -> f64 {
        let m = self.rotor.matrix();
        let s2: f64 = (1..3).map(|n| m[(0, n)].norm_sqr()).sum();
        (m[(0, 0)].norm_sqr() - s2 - 1.0).abs()
    }

    fn push(&self, o: Rotor) -> RelFrame {
        let mut history = self.history.clone();
        history.push(self.rotor.clone());
        RelFrame {
            rotor: o.compose(&self.rotor),
            history,
        }
    }

    /// `Sigma' = H Sigma`.
    pub fn boost(&self, dir: BoostAxis, psi: f64) -> RelFrame {
        self.push(boost_rotor(dir, psi))
    }

    /// Real rotation of the spatial units about the time axis, `R_1^alpha`.
    pub fn rotate(&self, alpha: f64) -> RelFrame {
        self.push(Rotor::from_matrix_unchecked(elementary(Axis::One, c(alpha, 0.0))))
    }
}

pub fn boost(frame: &RelFrame, dir: BoostAxis, psi: f64) -> RelFrame {
    frame.boost(dir, psi)
}

pub fn rapidity(v: f64) -> Result<f64> {
    if !(v.abs() < 1.0) {
        return Err(Error::InvalidArgument(format!("|V| < 1 required, got {v}")));
    }
    Ok(v.atanh())
}

/// Collinear velocity composition through rapidities.
pub fn add_velocities(v1: f64, v2: f64) -> Result<f64> {
    Ok((rapidity(v1)? + rapidity(v2)?).tanh())
}

/// Rapidity as a function of proper time, with its derivative.
#[derive(Clone)]
pub struct RapidityProgram(Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>);

impl std::fmt::Debug for RapidityProgram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RapidityProgram(psi(0) = {:?})", (self.0)(0.0).0)
    }
}

impl RapidityProgram {
    pub fn constant(psi: f64) -> Self {
        Self(Arc::new(move |_| (psi, 0.0)))
    }

    /// `psi = a t'`, constant proper acceleration `a`.
    pub fn linear(a: f64) -> Self {
        Self(Arc::new(move |t| (a * t, a)))
    }

    pub fn from_fn(f: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn at(&self, t_prime: f64) -> (f64, f64) {
        (self.0)(t_prime)
    }
}

/// Circular motion of radius `R` seen by the inertial observer, sampled at proper times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircularMotion {
    pub t_prime: Vec<f64>,
    /// `t = int cosh psi dt'`
    pub t: Vec<f64>,
    /// `alpha = (1/R) int tanh psi dt'`
    pub alpha: Vec<f64>,
    /// `a_tan = (1/cosh^2 psi) dpsi/dt`
    pub a_tan: Vec<f64>,
    /// `a_norm = R (dalpha/dt)^2`
    pub a_norm: Vec<f64>,
}

pub fn circular_motion(program: &RapidityProgram, radius: f64, t_prime: &[f64], opts: OdeOptions) -> Result<CircularMotion> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let rhs = |tp: f64, _: &[f64], dy: &mut [f64]| {
        let psi = program.at(tp).0;
        dy[0] = psi.cosh();
        dy[1] = psi.tanh() / radius;
    };
    let sol = integrate(rhs, &[0.0, 0.0], t_prime, opts)?;
    let mut out = CircularMotion {
        t_prime: t_prime.to_vec(),
        t: vec![],
        alpha: vec![],
        a_tan: vec![],
        a_norm: vec![],
    };
    for (tp, y) in t_prime.iter().zip(&sol.y) {
        let (psi, dpsi) = program.at(*tp);
        let ch = psi.cosh();
        out.t.push(y[0]);
        out.alpha.push(y[1]);
        out.a_tan.push(dpsi / (ch * ch * ch));
        let alpha_dot = psi.tanh() / (radius * ch);
        out.a_norm.push(radius * alpha_dot * alpha_dot);
    }
    Ok(out)
}

/// `omega (1 - cosh psi)`; about `-omega V^2 / 2` for small `V = tanh psi`.
pub fn thomas_simple(omega: f64, psi: f64) -> f64 {
    omega * (1.0 - psi.cosh())
}

/// Precession per unit time of a circular orbit, from the speed as a fraction of `c`.
pub fn thomas_from_speed(omega: f64, v: f64) -> Result<f64> {
    Ok(thomas_simple(omega, rapidity(v)?))
}

/// Instantaneous rotation angle and rapidity, each with a derivative, as functions of `t`.
pub type AngleProgram = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThomasGeneral {
    pub t: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta_prime: Vec<f64>,
    pub omega_t: Vec<f64>,
}

/// `O(t) = R_1^{-theta} H_2^{psi} R_1^{theta}`.
pub fn thomas_rotor(theta: f64, psi: f64) -> Rotor {
    let r = |a: f64| elementary(Axis::One, c(a, 0.0));
    let h = elementary(Axis::Two, c(0.0, psi));
    Rotor::from_matrix_unchecked(&(&r(-theta) * &h) * &r(theta))
}

/// `(d/dt O) O^T` entry (2,3) (one-based), by a Richardson stencil of step `h`.
fn g23(theta: &AngleProgram, psi: &AngleProgram, t: f64, h: f64) -> Complex64 {
    let o = |s: f64| thomas_rotor(theta(s), psi(s)).matrix().clone();
    let d = (&(&o(t + h) - &o(t - h)).scale_re(8.0) - &(&o(t + 2.0 * h) - &o(t - 2.0 * h))).scale_re(1.0 / (12.0 * h));
    (&d * &o(t).transpose())[(1, 2)]
}

/// Thomas rotation rate for a general motion. `theta` is the angle of instantaneous
/// rotation and `psi` the rapidity, both of time; `Omega_T = d(theta - theta')/dt` with
/// `theta'` the rotation angle left in the composed rotor.
pub fn thomas_general(
    theta: AngleProgram,
    psi: AngleProgram,
    times: &[f64],
    fd_step: f64,
) -> Result<ThomasGeneral> {
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("sample times must increase strictly".into()));
    }
    let eval = |t: f64| -> Result<Complex64> {
        let g = g23(&theta, &psi, t, fd_step);
        if g.im.abs() > 1e-6 * g.re.abs().max(1.0) {
            return Err(Error::RotorExtraction {
                t,
                reason: format!("rotation rate has imaginary part {:e}", g.im),
            });
        }
        Ok(g)
    };
    // five-point Gauss-Legendre nodes on [-1, 1]
    const X: [f64; 5] = [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
    const W: [f64; 5] = [0.236_926_885_056_189, 0.478_628_670_499_366, 0.568_888_888_888_889, 0.478_628_670_499_366, 0.236_926_885_056_189];
    let mut out = ThomasGeneral {
        t: times.to_vec(),
        theta: vec![],
        theta_prime: vec![],
        omega_t: vec![],
    };
    let mut acc = 0.0;
    for (i, &t) in times.iter().enumerate() {
        if i > 0 {
            let (a, b) = (times[i - 1], t);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for j in 0..5 {
                acc += half * W[j] * eval(mid + half * X[j])?.re;
            }
        }
        let g = eval(t)?;
        out.theta.push(theta(t));
        out.theta_prime.push(theta(t) + acc);
        out.omega_t.push(-g.re);
    }
    Ok(out)
}

/// `omega V_E V_P t / c^2` in radians, with velocities in m/s.
pub fn satellite_deviation(omega_sat: f64, v_e: f64, v_p: f64, t: f64) -> Result<f64> {
    for (name, v) in [("omega", omega_sat), ("V_E", v_e), ("V_P", v_p), ("t", t)] {
        if !(v >= 0.0) {
            return Err(Error::InvalidArgument(format!("{name} must be nonnegative, got {v}")));
        }
    }
    Ok(omega_sat * v_e * v_p * t / (C_LIGHT * C_LIGHT))
}

/// Straight-line motion with rapidity program `psi(t')` along direction 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostWorldline {
    pub t_prime: Vec<f64>,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

/// Integrates `dt/dt' = Re O_11`, `dx/dt' = Im O_12` for the rotor `H_3^{psi(t')}`.
pub fn boost_worldline(program: &RapidityProgram, t_prime: &[f64], opts: OdeOptions) -> Result<BoostWorldline> {
    let rhs = |tp: f64, _: &[f64], dy: &mut [f64]| {
        let o = boost_rotor(BoostAxis::Two, program.at(tp).0);
        dy[0] = o.matrix()[(0, 0)].re;
        dy[1] = o.matrix()[(0, 1)].im;
    };
    let sol = integrate(rhs, &[0.0, 0.0], t_prime, opts)?;
    Ok(BoostWorldline {
        t_prime: t_prime.to_vec(),
        t: sol.y.iter().map(|y| y[0]).collect(),
        x: sol.y.iter().map(|y| y[1]).collect(),
        v: t_prime.iter().map(|&tp| program.at(tp).0.tanh()).collect(),
    })
}

/// `x(t) = (sqrt(1 + a^2 t^2) - 1) / a`.
pub fn hyperbolic_oracle(a: f64, t: f64) -> f64 {
    ((1.0 + a * a * t * t).sqrt() - 1.0) / a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::linspace;

    #[test]
    fn interval_examples() {
        assert_eq!(interval_square(&BQInterval::new([0.0; 3], [1.0, 0.0, 0.0])).unwrap(), 1.0);
        let v = interval_square(&BQInterval::new([0.6, 0.0, 0.0], [0.0, 1.0, 0.0])).unwrap();
        assert!((v - 0.64).abs() < 1e-15);
        assert!(matches!(
            interval_square(&BQInterval::new([0.6, 0.0, 0.0], [1.0, 0.0, 0.0])),
            Err(Error::IntervalNotOrthogonal { .. })
        ));
    }

    #[test]
    fn boost_dilation_and_velocity() {
        let psi = rapidity(0.6).unwrap();
        let f = RelFrame::rest().boost(BoostAxis::Two, psi);
        assert!((f.clock_factor() - 1.25).abs() < 1e-12);
        assert!((f.velocity()[1] - 0.6).abs() < 1e-12);
        let f3 = RelFrame::rest().boost(BoostAxis::Three, psi);
        assert!((f3.velocity()[2] - 0.6).abs() < 1e-12);
        assert!(f.hyperbolic_residual() < 1e-14);
        assert_eq!(RelFrame::rest().boost(BoostAxis::Two, 0.0).rotor, Rotor::identity());
        // clock at rest in the boosted frame: i dt' q1'
        let rest = BQInterval::new([0.0; 3], [1.0, 0.0, 0.0]);
        let seen = rest.transformed(&f.rotor.inverse());
        let dt = sq(&seen.dt).sqrt();
        assert!((dt - 1.25).abs() < 1e-12);
        assert!(BoostAxis::from_number(1).is_err());
    }

    #[test]
    fn velocity_addition() {
        let v = add_velocities(0.5, 0.7).unwrap();
        assert!((v - 1.2 / 1.35).abs() < 1e-12);
        let f = RelFrame::rest()
            .boost(BoostAxis::Two, rapidity(0.5).unwrap())
            .boost(BoostAxis::Two, rapidity(0.7).unwrap());
        assert!((f.velocity()[1] - v).abs() < 1e-12);
        assert_eq!(f.history.len(), 2);
        assert!(rapidity(1.0).is_err());
    }

    #[test]
    fn interval_invariance_under_so21() {
        let i = BQInterval::new([0.0, 0.3, -0.2], [1.1, 0.0, 0.0]);
        let f = RelFrame::rest()
            .boost(BoostAxis::Two, 0.7)
            .rotate(0.4)
            .boost(BoostAxis::Three, -0.3);
        let j = i.transformed(&f.rotor);
        assert!((interval_square(&j).unwrap() - interval_square(&i).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn circular_constant_psi() {
        let psi = 0.5_f64;
        let r = 2.0;
        let tp = linspace(0.0, 3.0, 6);
        let m = circular_motion(&RapidityProgram::constant(psi), r, &tp, OdeOptions::default()).unwrap();
        for i in 0..tp.len() {
            assert!((m.t[i] - tp[i] * psi.cosh()).abs() < 1e-9);
            assert!((m.alpha[i] - psi.tanh() / r * tp[i]).abs() < 1e-9);
            assert_eq!(m.a_tan[i], 0.0);
        }
        // numeric check of a_norm = R (dalpha/dt)^2 through t(t')
        let dadt = (m.alpha[5] - m.alpha[4]) / (m.t[5] - m.t[4]);
        assert!((m.a_norm[3] - r * dadt * dadt).abs() < 1e-9);
        let zero = circular_motion(&RapidityProgram::constant(0.0), r, &tp, OdeOptions::default()).unwrap();
        assert!(zero.alpha.iter().all(|a| *a == 0.0));
        assert!(zero.a_norm.iter().all(|a| *a == 0.0));
    }

    #[test]
    fn thomas_small_speed() {
        let v = 0.1_f64;
        let w = thomas_from_speed(1.0, v).unwrap();
        // series: 1 - cosh(atanh v) = -v^2/2 - 3 v^4/8 - ...
        let series = -0.5 * v * v - 0.375 * v.powi(4) - 0.3125 * v.powi(6) - 35.0 / 128.0 * v.powi(8);
        assert!((w - series).abs() < 1e-10);
        assert!((w - (1.0 - 1.0 / (1.0 - v * v).sqrt())).abs() < 1e-15);
        assert!(((w + 0.005) / 0.005).abs() <= v * v);
        assert_eq!(thomas_simple(3.0, 0.0), 0.0);
    }

    #[test]
    fn thomas_general_reduces_to_simple() {
        let (omega, psi) = (0.8_f64, 0.4_f64);
        let theta: AngleProgram = Arc::new(move |t| omega * t);
        let psi_f: AngleProgram = Arc::new(move |_| psi);
        let ts = linspace(0.0, 5.0, 20);
        let g = thomas_general(theta, psi_f, &ts, 1e-3).unwrap();
        let expect = thomas_simple(omega, psi);
        for (i, w) in g.omega_t.iter().enumerate() {
            assert!((w - expect).abs() < 1e-6, "{w} {expect}");
            let drift = g.theta[i] - g.theta_prime[i];
            assert!((drift - expect * ts[i]).abs() < 1e-6);
        }
        let still = thomas_general(Arc::new(|t| 0.3 * t), Arc::new(|_| 0.0), &ts, 1e-3).unwrap();
        assert!(still.omega_t.iter().all(|w| w.abs() < 1e-12));
    }

    #[test]
    fn satellite_numbers() {
        let omega = 2.0 * PI / (7.66 * 3600.0);
        let d = satellite_deviation(omega, 29.8e3, 24.1e3, CENTURY).unwrap() / ARCMIN;
        assert!((d - 19.75).abs() < 0.05, "{d}");
        let d2 = satellite_deviation(omega, 29.8e3, 24.1e3, 2.0 * CENTURY).unwrap() / ARCMIN;
        assert_eq!(d2, 2.0 * d);
        assert_eq!(satellite_deviation(omega, 1.0, 1.0, 0.0).unwrap(), 0.0);
        assert!(satellite_deviation(-1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn hyperbolic_motion() {
        let a = 0.7;
        let tp = linspace(0.0, 4.0, 16);
        let w = boost_worldline(&RapidityProgram::linear(a), &tp, OdeOptions::with_tol(1e-12, 1e-12)).unwrap();
        for (t, x) in w.t.iter().zip(&w.x) {
            assert!((x - hyperbolic_oracle(a, *t)).abs() < 1e-9);
        }
    }
}
