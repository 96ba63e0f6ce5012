//! Field-theoretic identities checked on grids: quaternionic analyticity of
//! `H = (B_n + i E_n) q_n` against the vacuum Maxwell equations, the Pauli Hamiltonian
//! from the contraction `q_k q_m P_k P_m`, and the Yang-Mills strength of a potential built
//! from a connection.
//!
//! Every check evaluates both sides with the same stencils, so the gaps measure the
//! identity itself plus discretization error of the order of the stencil.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::epsilon;
use crate::eigen::Spinor;
use crate::error::{Error, Result};
use crate::geom::{curvature, dual_vector, from_dual, ConnectionField, CurvatureField};
use crate::grid::{derivative, DiffOptions, Field, Grid, STENCIL_MARGIN};
use crate::matrix::{c, CMatrix};
use crate::rep::{pauli_sigma, pauli_triad};

type Vec3 = [f64; 3];
type CVec3 = [Complex64; 3];

/// `sum_i amp_i sin(k_i . x + phase_i)`, a smooth vector field in any number of variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SineSeries {
    pub waves: Vec<SineWave>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SineWave {
    pub amp: Vec3,
    pub k: Vec<f64>,
    pub phase: f64,
}

impl SineSeries {
    pub fn zero() -> Self {
        Self { waves: vec![] }
    }

    pub fn at(&self, x: &[f64]) -> Vec3 {
        let mut out = [0.0; 3];
        for w in &self.waves {
            let arg: f64 = w.k.iter().zip(x).map(|(k, x)| k * x).sum::<f64>() + w.phase;
            let s = arg.sin();
            for j in 0..3 {
                out[j] += w.amp[j] * s;
            }
        }
        out
    }

    /// `terms` waves in `dim` variables with amplitudes and wave numbers in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, terms: usize) -> Self {
        let waves = (0..terms)
            .map(|_| SineWave {
                amp: [0; 3].map(|_| rng.gen_range(-1.0..1.0)),
                k: (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                phase: rng.gen_range(0.0..std::f64::consts::TAU),
            })
            .collect();
        Self { waves }
    }
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

// ---------------------------------------------------------------------------------------
// Maxwell

/// Electric and magnetic fields on a `(t, x, y, z)` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EMField {
    pub e: Field<Vec3>,
    pub b: Field<Vec3>,
}

impl EMField {
    pub fn new(e: Field<Vec3>, b: Field<Vec3>) -> Result<Self> {
        if e.grid.dim() != 4 {
            return Err(Error::Grid(format!("space-time grid needs 4 axes, got {}", e.grid.dim())));
        }
        if !e.grid.compatible(&b.grid) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { e, b })
    }

    /// Samples `f(t, [x, y, z]) -> (E, B)`.
    pub fn sample(grid: &Grid, f: impl Fn(f64, Vec3) -> (Vec3, Vec3)) -> Result<Self> {
        let eb = Field::sample(grid, |x| f(x[0], [x[1], x[2], x[3]]));
        Self::new(eb.map(|v| v.0), eb.map(|v| v.1))
    }

    pub fn grid(&self) -> &Grid {
        &self.e.grid
    }

    /// `H = (B_n + i E_n) q_n` with the standard triad.
    pub fn packed(&self) -> Field<CMatrix> {
        let q = pauli_triad();
        Field {
            grid: self.e.grid.clone(),
            values: self
                .e
                .values
                .iter()
                .zip(&self.b.values)
                .map(|(e, b)| q.combine(&[0, 1, 2].map(|n| c(b[n], e[n]))))
                .collect(),
        }
    }

    pub fn unpack(h: &Field<CMatrix>) -> Result<Self> {
        let q = pauli_triad();
        let parts: Vec<CVec3> = h.values.iter().map(|m| q.decompose(m).1).collect();
        let e = parts.iter().map(|v| v.map(|z| z.im)).collect();
        let b = parts.iter().map(|v| v.map(|z| z.re)).collect();
        Self::new(Field::new(h.grid.clone(), e)?, Field::new(h.grid.clone(), b)?)
    }
}

/// The plane wave `E = (0, a cos(z + t + phase), 0)`, `B = (-a cos(z + t + phase), 0, 0)`.
pub fn plane_wave(amplitude: f64, phase: f64) -> impl Fn(f64, Vec3) -> (Vec3, Vec3) {
    move |t, x| {
        let v = amplitude * (x[2] + t + phase).cos();
        ([0.0, v, 0.0], [-v, 0.0, 0.0])
    }
}

/// The four vacuum Maxwell residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaxwellResidual {
    DivE,
    DivB,
    /// `rot E - dB/dt`
    RotE,
    /// `rot B + dE/dt`
    RotB,
}

impl MaxwellResidual {
    pub const ALL: [MaxwellResidual; 4] = [Self::DivE, Self::DivB, Self::RotE, Self::RotB];

    pub fn name(self) -> &'static str {
        match self {
            Self::DivE => "div E",
            Self::DivB => "div B",
            Self::RotE => "rot E - dB/dt",
            Self::RotB => "rot B + dE/dt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }
}

/// Residual values at one point, as 3-vectors (scalar residuals in slot 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellParts {
    pub div_e: f64,
    pub div_b: f64,
    pub rot_e: Vec3,
    pub rot_b: Vec3,
}

impl MaxwellParts {
    pub fn get(&self, which: MaxwellResidual) -> Vec3 {
        match which {
            MaxwellResidual::DivE => [self.div_e, 0.0, 0.0],
            MaxwellResidual::DivB => [self.div_b, 0.0, 0.0],
            MaxwellResidual::RotE => self.rot_e,
            MaxwellResidual::RotB => self.rot_b,
        }
    }

    fn max_abs_diff(&self, other: &MaxwellParts) -> f64 {
        MaxwellResidual::ALL.iter().fold(0.0, |m, &w| {
            let (a, b) = (self.get(w), other.get(w));
            (0..3).fold(m, |m, j| m.max((a[j] - b[j]).abs()))
        })
    }
}

/// `(i d/dt - q_k d/dx_k) H` on the interior grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FueterResidual {
    pub grid: Grid,
    pub values: Vec<CMatrix>,
}

impl FueterResidual {
    /// Splits the matrix residual into Maxwell residuals: the scalar part is
    /// `div B + i div E` and the vector part is `-(rot B + dE/dt) - i (rot E - dB/dt)`.
    pub fn parts(&self, point: usize) -> MaxwellParts {
        let (s, v) = pauli_triad().decompose(&self.values[point]);
        MaxwellParts {
            div_e: s.im,
            div_b: s.re,
            rot_e: v.map(|z| -z.im),
            rot_b: v.map(|z| -z.re),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, r| m.max(r.max_abs()))
    }

    pub fn named_max(&self, which: MaxwellResidual) -> f64 {
        (0..self.grid.len()).fold(0.0, |m, p| self.parts(p).get(which).iter().fold(m, |m, x| m.max(x.abs())))
    }
}

pub fn fueter_residual(em: &EMField, opts: DiffOptions) -> Result<FueterResidual> {
    let h = em.packed();
    let d: Vec<Field<CMatrix>> = (0..4).map(|a| derivative(&h, a, opts)).collect::<Result<_>>()?;
    let q = pauli_triad();
    let i = c(0.0, 1.0);
    let values = (0..d[0].grid.len())
        .map(|p| {
            let mut r = d[0].values[p].scale(i);
            for k in 0..3 {
                r = &r - &(&q.q[k] * &d[k + 1].values[p]);
            }
            r
        })
        .collect();
    Ok(FueterResidual {
        grid: d[0].grid.clone(),
        values,
    })
}

/// Maxwell residuals by direct vector calculus with the given stencil.
pub fn maxwell_residuals(em: &EMField, opts: DiffOptions) -> Result<Vec<MaxwellParts>> {
    let de: Vec<Field<Vec3>> = (0..4).map(|a| derivative(&em.e, a, opts)).collect::<Result<_>>()?;
    let db: Vec<Field<Vec3>> = (0..4).map(|a| derivative(&em.b, a, opts)).collect::<Result<_>>()?;
    let div = |d: &[Field<Vec3>], p: usize| (0..3).map(|k| d[k + 1].values[p][k]).sum::<f64>();
    let rot = |d: &[Field<Vec3>], p: usize| {
        let mut out = [0.0; 3];
        for (n, slot) in out.iter_mut().enumerate() {
            for k in 0..3 {
                for m in 0..3 {
                    *slot += epsilon(n, k, m) * d[k + 1].values[p][m];
                }
            }
        }
        out
    };
    Ok((0..de[0].grid.len())
        .map(|p| {
            let (re, rb) = (rot(&de, p), rot(&db, p));
            MaxwellParts {
                div_e: div(&de, p),
                div_b: div(&db, p),
                rot_e: [0, 1, 2].map(|n| re[n] - db[0].values[p][n]),
                rot_b: [0, 1, 2].map(|n| rb[n] + de[0].values[p][n]),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxwellReport {
    /// Largest value of each named residual, in [`MaxwellResidual::ALL`] order.
    pub residuals: [(String, f64); 4],
    /// Largest component difference between the Fueter split and direct vector calculus.
    pub matching_gap: f64,
}

impl MaxwellReport {
    pub fn residual(&self, which: MaxwellResidual) -> f64 {
        self.residuals[MaxwellResidual::ALL.iter().position(|&w| w == which).unwrap_or(0)].1
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.1))
    }
}

pub fn maxwell_equivalence_report(em: &EMField, opts: DiffOptions) -> Result<MaxwellReport> {
    let fueter = fueter_residual(em, opts)?;
    let direct = maxwell_residuals(em, opts)?;
    let matching_gap = direct
        .iter()
        .enumerate()
        .fold(0.0_f64, |m, (p, d)| m.max(d.max_abs_diff(&fueter.parts(p))));
    let residuals = MaxwellResidual::ALL.map(|w| {
        let worst = direct.iter().fold(0.0_f64, |m, d| d.get(w).iter().fold(m, |m, x: &f64| m.max(x.abs())));
        (w.name().to_string(), worst)
    });
    Ok(MaxwellReport {
        residuals,
        matching_gap,
    })
}

// ---------------------------------------------------------------------------------------
// Pauli

/// `A = 1/2 B x r + series(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorPotential {
    pub uniform_b: Vec3,
    pub series: SineSeries,
}

impl VectorPotential {
    pub fn zero() -> Self {
        Self::uniform([0.0; 3])
    }

    pub fn uniform(b: Vec3) -> Self {
        Self {
            uniform_b: b,
            series: SineSeries::zero(),
        }
    }

    pub fn at(&self, x: &[f64]) -> Vec3 {
        let r = [x[0], x[1], x[2]];
        let rot = cross(&self.uniform_b, &r);
        let s = self.series.at(x);
        [0, 1, 2].map(|k| 0.5 * rot[k] + s[k])
    }
}

/// `exp(-|r - r0|^2 / (2 w^2)) (c_0 + c_1 x + c_2 y + c_3 z)` per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpinor {
    pub center: Vec3,
    pub width: f64,
    pub coeffs: [[Complex64; 4]; 2],
}

impl GaussianSpinor {
    pub fn at(&self, x: &[f64]) -> Spinor {
        let d: Vec<f64> = (0..3).map(|k| x[k] - self.center[k]).collect();
        let env = (-(d.iter().map(|v| v * v).sum::<f64>()) / (2.0 * self.width * self.width)).exp();
        self.coeffs
            .map(|cs| (cs[0] + cs[1] * d[0] + cs[2] * d[1] + cs[3] * d[2]) * env)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, center: Vec3, width: f64) -> Self {
        let mut z = || c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let coeffs = [[z(), z(), z(), z()], [z(), z(), z(), z()]];
        Self { center, width, coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumSetup {
    pub charge: f64,
    pub mass: f64,
    pub hbar: f64,
    pub c_light: f64,
    pub potential: VectorPotential,
    pub psi: GaussianSpinor,
    pub grid: Grid,
}

impl QuantumSetup {
    /// Points per axis needed for two nested first derivatives.
    pub const MIN_AXIS_POINTS: usize = 4 * STENCIL_MARGIN + 1;

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("charge", self.charge),
            ("mass", self.mass),
            ("hbar", self.hbar),
            ("c", self.c_light),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        if self.grid.dim() != 3 {
            return Err(Error::Grid(format!("spatial grid needs 3 axes, got {}", self.grid.dim())));
        }
        if let Some(a) = self.grid.axes().iter().find(|a| a.len < Self::MIN_AXIS_POINTS) {
            return Err(Error::Grid(format!(
                "axis {} has {} points, second differences need {}",
                a.name,
                a.len,
                Self::MIN_AXIS_POINTS
            )));
        }
        Ok(())
    }

    /// `e hbar / 2 m c`.
    pub fn bohr_magneton(&self) -> f64 {
        self.charge * self.hbar / (2.0 * self.mass * self.c_light)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliReport {
    /// Largest pointwise difference between the two Hamiltonians applied to the spinor.
    pub operator_gap: f64,
    /// Largest value of either Hamiltonian applied to the spinor.
    pub scale: f64,
    /// Least-squares coefficient `mu` in `H_Q psi - (1/2m) P.P psi = -mu B.sigma psi`;
    /// `None` when the field vanishes.
    pub spin_coefficient: Option<f64>,
    pub bohr_magneton: f64,
}

impl PauliReport {
    pub fn coefficient_error(&self) -> Option<f64> {
        self.spin_coefficient.map(|mu| (mu - self.bohr_magneton).abs() / self.bohr_magneton)
    }
}

fn momentum(setup: &QuantumSetup, psi: &Field<Spinor>, k: usize, opts: DiffOptions) -> Result<Field<Spinor>> {
    let d = derivative(psi, k, opts)?;
    let factor = setup.charge / setup.c_light;
    let values = (0..d.grid.len())
        .map(|p| {
            let a = setup.potential.at(&d.grid.coords(p))[k];
            let v = psi.at_interior(&d.grid, p, STENCIL_MARGIN);
            [0, 1].map(|s| d.values[p][s] * c(0.0, -setup.hbar) - v[s] * (factor * a))
        })
        .collect();
    Ok(Field { grid: d.grid, values })
}

/// Applies `-(1/2m) q_k q_m P_k P_m` and `(1/2m) P_k P_k - (e hbar / 2mc) B.sigma` to the
/// spinor, with `B = rot A` differenced by the same stencil.
pub fn pauli_check(setup: &QuantumSetup, opts: DiffOptions) -> Result<PauliReport> {
    setup.validate()?;
    let psi = Field::sample(&setup.grid, |x| setup.psi.at(x));
    let first: Vec<Field<Spinor>> = (0..3).map(|m| momentum(setup, &psi, m, opts)).collect::<Result<_>>()?;
    // pp[k][m] = P_k P_m psi
    let pp: Vec<Vec<Field<Spinor>>> = (0..3)
        .map(|k| first.iter().map(|f| momentum(setup, f, k, opts)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let a = Field::sample(&setup.grid, |x| setup.potential.at(x));
    let da: Vec<Field<Vec3>> = (0..3).map(|k| derivative(&a, k, opts)).collect::<Result<_>>()?;

    let q = pauli_triad();
    let sigma = pauli_sigma();
    let inner = &pp[0][0].grid;
    let half_m = 0.5 / setup.mass;
    let mu = setup.bohr_magneton();
    let (mut gap, mut scale) = (0.0_f64, 0.0_f64);
    let (mut num, mut den) = (0.0, 0.0);
    for p in 0..inner.len() {
        let mut hq = [c(0.0, 0.0); 2];
        let mut kinetic = [c(0.0, 0.0); 2];
        for k in 0..3 {
            for m in 0..3 {
                let v = (&q.q[k] * &q.q[m]).apply(&pp[k][m].values[p]);
                for s in 0..2 {
                    hq[s] -= v[s] * half_m;
                }
            }
            for s in 0..2 {
                kinetic[s] += pp[k][k].values[p][s] * half_m;
            }
        }
        let b = {
            let grad = |k: usize| *da[k].at_interior(inner, p, STENCIL_MARGIN);
            let g = [grad(0), grad(1), grad(2)];
            // B_n = epsilon_nkm d_k A_m
            [0, 1, 2].map(|n| {
                let mut s = 0.0;
                for k in 0..3 {
                    for m in 0..3 {
                        s += epsilon(n, k, m) * g[k][m];
                    }
                }
                s
            })
        };
        let psi_p = *psi.at_interior(inner, p, 2 * STENCIL_MARGIN);
        let bs = (0..3).fold(CMatrix::zeros(2), |acc, n| &acc + &sigma[n].scale_re(b[n]));
        let w = bs.apply(&psi_p);
        for s in 0..2 {
            let hp = kinetic[s] - w[s] * mu;
            gap = gap.max((hq[s] - hp).norm());
            scale = scale.max(hq[s].norm()).max(hp.norm());
            let spin = hq[s] - kinetic[s];
            num += (w[s].conj() * spin).re;
            den += w[s].norm_sqr();
        }
    }
    let spin_coefficient = (den > 1e-300).then(|| -num / den);
    Ok(PauliReport {
        operator_gap: gap,
        scale,
        spin_coefficient,
        bohr_magneton: mu,
    })
}

// ---------------------------------------------------------------------------------------
// Yang-Mills

/// Sign in `A_ka = s 1/2 epsilon_kmn Omega_amn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialSign {
    /// `s = +1`.
    Literal,
    /// `s = -1`, the sign for which the strength formula reproduces the curvature.
    Flipped,
}

impl PotentialSign {
    fn factor(self) -> f64 {
        match self {
            Self::Literal => 1.0,
            Self::Flipped => -1.0,
        }
    }
}

/// Connection over a coordinate grid, `Omega_amn` stored as `connection.values[x][a]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeData {
    pub connection: ConnectionField,
}

impl GaugeData {
    /// `A_ka` as `values[point][a]`, a vector in `k`.
    pub fn potential(&self, sign: PotentialSign) -> Vec<Vec<CVec3>> {
        let s = sign.factor();
        self.connection
            .values
            .iter()
            .map(|om| om.iter().map(|w| dual_vector(w).map(|z| z * s)).collect())
            .collect()
    }

    /// Connection with `Omega_a = from_dual(series_a)` for each coordinate `a`.
    pub fn from_series(grid: &Grid, series: &[SineSeries]) -> Result<Self> {
        if series.len() != grid.dim() {
            return Err(Error::DimensionMismatch {
                expected: grid.dim(),
                got: series.len(),
            });
        }
        let values = (0..grid.len())
            .map(|p| {
                let x = grid.coords(p);
                series.iter().map(|s| from_dual(&s.at(&x).map(|v| c(v, 0.0)))).collect()
            })
            .collect();
        Ok(Self {
            connection: ConnectionField {
                grid: grid.clone(),
                values,
            },
        })
    }
}

/// `F_kab` as `values[point][a * G + b]`, a vector in `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrengthField {
    pub grid: Grid,
    pub values: Vec<Vec<CVec3>>,
}

impl StrengthField {
    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0, |m, v| v.iter().fold(m, |m, z| m.max(z.norm())))
    }

    pub fn max_abs_diff(&self, other: &StrengthField) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .fold(0.0, |m, (a, b)| (0..3).fold(m, |m, k| m.max((a[k] - b[k]).norm())))
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let g = self.grid.dim();
        let mut worst = 0.0_f64;
        for v in &self.values {
            for a in 0..g {
                for b in 0..g {
                    for k in 0..3 {
                        worst = worst.max((v[a * g + b][k] + v[b * g + a][k]).norm());
                    }
                }
            }
        }
        worst
    }
}

/// `F_kab = 1/2 epsilon_kmn r_mnab`.
pub fn strength_from_curvature(curv: &CurvatureField) -> StrengthField {
    StrengthField {
        grid: curv.grid.clone(),
        values: curv.values.iter().map(|r| r.iter().map(dual_vector).collect()).collect(),
    }
}

fn cvec_cross(a: &CVec3, b: &CVec3) -> CVec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// `F_kab = d_b A_ka - d_a A_kb + epsilon_kmn A_ma A_nb`.
pub fn strength_from_potential(g: &GaugeData, sign: PotentialSign, opts: DiffOptions) -> Result<StrengthField> {
    let grid = &g.connection.grid;
    let dim = grid.dim();
    let pot = g.potential(sign);
    let comps: Vec<Field<CVec3>> = (0..dim)
        .map(|a| Field {
            grid: grid.clone(),
            values: pot.iter().map(|v| v[a]).collect(),
        })
        .collect();
    // d[b][a] = d_b A_a
    let d: Vec<Vec<Field<CVec3>>> = (0..dim)
        .map(|b| comps.iter().map(|f| derivative(f, b, opts)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let sub = grid.interior(STENCIL_MARGIN)?;
    let values = (0..sub.len())
        .map(|p| {
            let at: Vec<&CVec3> = comps.iter().map(|f| f.at_interior(&sub, p, STENCIL_MARGIN)).collect();
            let mut out = Vec::with_capacity(dim * dim);
            for a in 0..dim {
                for b in 0..dim {
                    let quad = cvec_cross(at[a], at[b]);
                    out.push([0, 1, 2].map(|k| d[b][a].values[p][k] - d[a][b].values[p][k] + quad[k]));
                }
            }
            out
        })
        .collect();
    Ok(StrengthField { grid: sub, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YangMillsReport {
    /// Gap between the curvature strength and the formula on the literal potential.
    pub literal_gap: f64,
    /// Gap with the sign-flipped potential.
    pub flipped_gap: f64,
    /// Gap with the flipped potential against a curvature whose quadratic term has the
    /// opposite ordering, `Omega_a Omega_b - Omega_b Omega_a`.
    pub reversed_order_gap: f64,
    /// `max |F|` from the curvature.
    pub strength_norm: f64,
    pub antisymmetry_residual: f64,
}

impl YangMillsReport {
    /// Smallest of the three gaps; the identity holds for the convention attaining it.
    pub fn identity_gap(&self) -> f64 {
        self.literal_gap.min(self.flipped_gap).min(self.reversed_order_gap)
    }

    pub fn consistent_convention(&self) -> &'static str {
        let best = self.identity_gap();
        if best == self.flipped_gap {
            "flipped potential, Omega_b Omega_a - Omega_a Omega_b"
        } else if best == self.literal_gap {
            "literal potential, Omega_b Omega_a - Omega_a Omega_b"
        } else {
            "flipped potential, Omega_a Omega_b - Omega_b Omega_a"
        }
    }
}

pub fn ym_strength_check(g: &GaugeData, opts: DiffOptions) -> Result<YangMillsReport> {
    let curv = curvature(&g.connection, opts)?;
    let from_curv = strength_from_curvature(&curv);
    let literal = strength_from_potential(g, PotentialSign::Literal, opts)?;
    let flipped = strength_from_potential(g, PotentialSign::Flipped, opts)?;
    // reversing the commutator order subtracts twice the quadratic term A_a x A_b
    let dim = g.connection.grid.dim();
    let pot = g.potential(PotentialSign::Literal);
    let sub = &from_curv.grid;
    let reversed = StrengthField {
        grid: sub.clone(),
        values: (0..sub.len())
            .map(|p| {
                let idx: Vec<usize> = sub.multi(p).iter().map(|i| i + STENCIL_MARGIN).collect();
                let a = &pot[g.connection.grid.flat(&idx)];
                let mut out = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    for j in 0..dim {
                        let quad = cvec_cross(&a[i], &a[j]);
                        let f = from_curv.values[p][i * dim + j];
                        out.push([0, 1, 2].map(|k| f[k] - quad[k] * 2.0));
                    }
                }
                out
            })
            .collect(),
    };
    Ok(YangMillsReport {
        literal_gap: from_curv.max_abs_diff(&literal),
        flipped_gap: from_curv.max_abs_diff(&flipped),
        reversed_order_gap: reversed.max_abs_diff(&flipped),
        strength_norm: from_curv.max_abs(),
        antisymmetry_residual: from_curv.antisymmetry_residual(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{connection_from_rotor, AnglePath, AngleTerm};
    use crate::grid::{GridAxis, Stencil};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spacetime(h: f64) -> Grid {
        Grid::new(
            ["t", "x", "y", "z"]
                .iter()
                .zip([0.1, 0.2, -0.3, 0.4])
                .map(|(n, c0)| GridAxis::centered(*n, c0, h, 3))
                .collect(),
        )
        .unwrap()
    }

    fn space(h: f64, half: usize) -> Grid {
        Grid::new(
            ["x", "y", "z"]
                .iter()
                .zip([0.1, -0.2, 0.3])
                .map(|(n, c0)| GridAxis::centered(*n, c0, h, half))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn packing_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (se, sb) = (SineSeries::random(&mut rng, 4, 3), SineSeries::random(&mut rng, 4, 3));
        let em = EMField::sample(&spacetime(0.1), |t, x| {
            let p = [t, x[0], x[1], x[2]];
            (se.at(&p), sb.at(&p))
        })
        .unwrap();
        let back = EMField::unpack(&em.packed()).unwrap();
        for (a, b) in em.e.values.iter().chain(&em.b.values).zip(back.e.values.iter().chain(&back.b.values)) {
            for j in 0..3 {
                assert!((a[j] - b[j]).abs() <= 4.0 * f64::EPSILON * a[j].abs().max(1.0));
            }
        }
    }

    #[test]
    fn constant_fields_have_no_residual() {
        let em = EMField::sample(&spacetime(1e-2), |_, _| ([1.0, -2.0, 0.5], [0.3, 0.0, 4.0])).unwrap();
        assert!(fueter_residual(&em, DiffOptions::default()).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn plane_wave_is_analytic() {
        let em = EMField::sample(&spacetime(1e-3), plane_wave(1.0, 0.2)).unwrap();
        let r = fueter_residual(&em, DiffOptions::default()).unwrap();
        assert!(r.max_abs() < 1e-6, "{}", r.max_abs());
    }

    #[test]
    fn opposite_direction_wave_is_not_analytic() {
        let em = EMField::sample(&spacetime(1e-3), |t, x| {
            let v = (x[2] - t).cos();
            ([0.0, v, 0.0], [-v, 0.0, 0.0])
        })
        .unwrap();
        let r = fueter_residual(&em, DiffOptions::default()).unwrap();
        assert!(r.named_max(MaxwellResidual::RotE) > 0.1);
    }

    #[test]
    fn static_divergence_is_named() {
        let em = EMField::sample(&spacetime(1e-2), |_, x| ([x[0], 0.0, 0.0], [0.0; 3])).unwrap();
        let r = fueter_residual(&em, DiffOptions::default()).unwrap();
        assert!((r.named_max(MaxwellResidual::DivE) - 1.0).abs() < 1e-10);
        for w in [MaxwellResidual::DivB, MaxwellResidual::RotE, MaxwellResidual::RotB] {
            assert!(r.named_max(w) < 1e-10, "{}", w.name());
        }
        assert_eq!(MaxwellResidual::from_name("div E"), Some(MaxwellResidual::DivE));
    }

    #[test]
    fn fueter_split_matches_vector_calculus() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (se, sb) = (SineSeries::random(&mut rng, 4, 4), SineSeries::random(&mut rng, 4, 4));
        let em = EMField::sample(&spacetime(1e-2), |t, x| {
            let p = [t, x[0], x[1], x[2]];
            (se.at(&p), sb.at(&p))
        })
        .unwrap();
        let rep = maxwell_equivalence_report(&em, DiffOptions::default()).unwrap();
        assert!(rep.matching_gap < 1e-10, "{}", rep.matching_gap);
        assert!(rep.max_residual() > 1e-3);
    }

    fn setup(potential: VectorPotential, h: f64, seed: u64) -> QuantumSetup {
        setup_on(potential, space(h, 5), seed)
    }

    fn setup_on(potential: VectorPotential, grid: Grid, seed: u64) -> QuantumSetup {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        QuantumSetup {
            charge: 1.3,
            mass: 0.7,
            hbar: 1.1,
            c_light: 2.0,
            potential,
            psi: GaussianSpinor::random(&mut rng, [0.0; 3], 0.8),
            grid,
        }
    }

    #[test]
    fn pauli_without_field_is_laplacian() {
        let rep = pauli_check(&setup(VectorPotential::zero(), 1e-3, 3), DiffOptions::default()).unwrap();
        assert!(rep.operator_gap < 1e-10, "{}", rep.operator_gap);
        assert!(rep.spin_coefficient.is_none());
    }

    #[test]
    fn uniform_field_gives_bohr_magneton() {
        let s = setup(VectorPotential::uniform([0.3, -0.5, 0.8]), 1e-3, 4);
        let rep = pauli_check(&s, DiffOptions::default()).unwrap();
        assert!(rep.coefficient_error().unwrap() < 1e-6, "{:?}", rep);
        assert!(rep.operator_gap < 1e-6);
    }

    #[test]
    fn pauli_gap_shrinks_quadratically_with_central_stencil() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pot = VectorPotential {
            uniform_b: [0.2, 0.1, -0.4],
            series: SineSeries::random(&mut rng, 3, 3),
        };
        let opts = DiffOptions::unchecked(Stencil::Central);
        // same physical region, twice the points per axis
        let g1 = pauli_check(&setup_on(pot.clone(), space(0.08, 5), 6), opts).unwrap().operator_gap;
        let g2 = pauli_check(&setup_on(pot, space(0.04, 10), 6), opts).unwrap().operator_gap;
        let ratio = g1 / g2;
        assert!(ratio > 3.0 && ratio < 5.0, "{ratio}");
    }

    #[test]
    fn coarse_pauli_grid_rejected() {
        let mut s = setup(VectorPotential::zero(), 1e-3, 7);
        s.grid = space(1e-3, 3);
        assert!(matches!(pauli_check(&s, DiffOptions::default()), Err(Error::Grid(_))));
    }

    #[test]
    fn yang_mills_identity_needs_flipped_potential() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let series: Vec<SineSeries> = (0..3).map(|_| SineSeries::random(&mut rng, 3, 3)).collect();
        let g = GaugeData::from_series(&space(1e-3, 3), &series).unwrap();
        let rep = ym_strength_check(&g, DiffOptions::default()).unwrap();
        assert!(rep.flipped_gap < 1e-5, "{rep:?}");
        assert!(rep.literal_gap > 1e-2);
        assert!(rep.reversed_order_gap > 1e-2);
        assert!(rep.strength_norm > 1e-2);
        assert!(rep.antisymmetry_residual < 1e-12);
        assert!(rep.consistent_convention().starts_with("flipped potential, Omega_b"));
    }

    #[test]
    fn zero_and_metric_connections_have_no_strength() {
        let grid = space(1e-3, 3);
        let zero = GaugeData {
            connection: ConnectionField::zeros(grid.clone()),
        };
        let rep = ym_strength_check(&zero, DiffOptions::default()).unwrap();
        assert_eq!(rep.strength_norm, 0.0);
        assert_eq!(rep.flipped_gap, 0.0);

        let term = |amp: f64, wave: Vec<f64>| AngleTerm {
            amp: c(amp, 0.0),
            wave,
            phase: 0.3,
        };
        let path = AnglePath {
            terms: [
                vec![term(0.7, vec![1.0, -0.5, 0.2])],
                vec![term(0.4, vec![0.3, 0.8, -0.6])],
                vec![term(-0.9, vec![-0.2, 0.4, 1.1])],
            ],
        };
        let conn = connection_from_rotor(&path.rotor_field(&space(1e-3, 5)), DiffOptions::default()).unwrap();
        let rep = ym_strength_check(&GaugeData { connection: conn }, DiffOptions::default()).unwrap();
        assert!(rep.strength_norm < 1e-5, "{rep:?}");
        assert!(rep.flipped_gap < 1e-5);
    }
}
