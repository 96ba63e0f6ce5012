//! Matrix representations of the vector units.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{delta, epsilon};
use crate::error::{Error, Result};
use crate::matrix::{c, CMatrix};
use crate::tol;

/// Three square matrices `q1, q2, q3` standing for the vector units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitTriad {
    pub q: [CMatrix; 3],
}

impl UnitTriad {
    pub fn new(q1: CMatrix, q2: CMatrix, q3: CMatrix) -> Self {
        Self { q: [q1, q2, q3] }
    }

    pub fn dim(&self) -> usize {
        self.q[0].dim()
    }

    /// The scalar unit in this representation.
    pub fn one(&self) -> CMatrix {
        CMatrix::identity(self.dim())
    }

    /// `a_k q_k` for (possibly complex) components.
    pub fn combine(&self, a: &[Complex64; 3]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim());
        for k in 0..3 {
            out = &out + &self.q[k].scale(a[k]);
        }
        out
    }

    pub fn combine_real(&self, a: &[f64; 3]) -> CMatrix {
        self.combine(&a.map(|x| c(x, 0.0)))
    }

    /// Split `M = s 1 + v_k q_k` using the trace form `Tr(q_j q_k) = -dim delta_jk`.
    /// Exact for any element of the algebra spanned by a valid triad.
    pub fn decompose(&self, m: &CMatrix) -> (Complex64, [Complex64; 3]) {
        let d = self.dim() as f64;
        let s = m.trace() / d;
        let v = [0, 1, 2].map(|k| -(&self.q[k] * m).trace() / d);
        (s, v)
    }

    pub fn max_abs_diff(&self, other: &UnitTriad) -> f64 {
        (0..3).fold(0.0_f64, |m, k| m.max(self.q[k].max_abs_diff(&other.q[k])))
    }
}

/// The standard triad `q_k = -i sigma_k`.
pub fn pauli_triad() -> UnitTriad {
    let o = c(0.0, 0.0);
    let mi = c(0.0, -1.0);
    UnitTriad::new(
        CMatrix::m2(o, mi, mi, o),
        CMatrix::m2(o, c(-1.0, 0.0), c(1.0, 0.0), o),
        CMatrix::m2(mi, o, o, c(0.0, 1.0)),
    )
}

/// The Pauli matrices `sigma_1, sigma_2, sigma_3`.
pub fn pauli_sigma() -> [CMatrix; 3] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        CMatrix::m2(o, one, one, o),
        CMatrix::m2(o, c(0.0, -1.0), c(0.0, 1.0), o),
        CMatrix::m2(one, o, o, -one),
    ]
}

/// Two traceless 2x2 matrices with `Tr(AB) = 0`, the seed of a triad.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracelessPair {
    pub a: CMatrix,
    pub b: CMatrix,
}

impl TracelessPair {
    /// `A = (a b; c -a)`, `B = (d e; f -d)`.
    pub fn from_entries(a: [Complex64; 3], b: [Complex64; 3]) -> Self {
        Self {
            a: CMatrix::m2(a[0], a[1], a[2], -a[0]),
            b: CMatrix::m2(b[0], b[1], b[2], -b[0]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for m in [&self.a, &self.b] {
            if m.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: m.dim(),
                });
            }
            let scale = m.max_abs();
            let tr = m.trace().norm();
            if tr > tol::scaled(tol::MATRIX, scale) {
                return Err(Error::NotTraceless { trace: tr });
            }
            let det = m.det().norm();
            if det <= tol::MATRIX * scale * scale {
                return Err(Error::DegenerateMatrix { det });
            }
        }
        let tr_ab = (&self.a * &self.b).trace().norm();
        if tr_ab > tol::scaled(tol::MATRIX, self.a.max_abs() * self.b.max_abs()) {
            return Err(Error::IncompatiblePair { trace: tr_ab });
        }
        Ok(())
    }
}

/// `q1 = A / sqrt(det A)`, `q2 = B / sqrt(det B)`, `q3 = q1 q2`, principal square roots.
///
/// `q3` is formed as the product of the first two units, which equals
/// `AB / (sqrt(det A) sqrt(det B))`.
pub fn triad_from_traceless(pair: &TracelessPair) -> Result<UnitTriad> {
    pair.validate()?;
    let q1 = pair.a.scale(pair.a.det().sqrt().inv());
    let q2 = pair.b.scale(pair.b.det().sqrt().inv());
    let q3 = &q1 * &q2;
    Ok(UnitTriad::new(q1, q2, q3))
}

/// Replace every complex entry `x + iy` by the real block `(x y; -y x)`.
pub fn rank_double_matrix(m: &CMatrix) -> CMatrix {
    let n = m.dim();
    let mut out = CMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            out[(2 * i, 2 * j)] = c(z.re, 0.0);
            out[(2 * i, 2 * j + 1)] = c(z.im, 0.0);
            out[(2 * i + 1, 2 * j)] = c(-z.im, 0.0);
            out[(2 * i + 1, 2 * j + 1)] = c(z.re, 0.0);
        }
    }
    out
}

pub fn rank_double(triad: &UnitTriad) -> UnitTriad {
    UnitTriad {
        q: [0, 1, 2].map(|k| rank_double_matrix(&triad.q[k])),
    }
}

/// Deviations of a triad from the multiplication rule and the det/trace conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriadReport {
    /// max over j, k of |q_j q_k - (-delta_jk + epsilon_jkn q_n)|
    pub rule_deviation: f64,
    pub det_deviation: f64,
    pub trace_deviation: f64,
}

impl TriadReport {
    pub fn max_deviation(&self) -> f64 {
        self.rule_deviation.max(self.det_deviation).max(self.trace_deviation)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

pub fn verify_triad(triad: &UnitTriad) -> TriadReport {
    let n = triad.dim();
    let one = CMatrix::identity(n);
    let mut rule = 0.0_f64;
    for j in 0..3 {
        for k in 0..3 {
            let lhs = &triad.q[j] * &triad.q[k];
            let mut rhs = one.scale_re(-delta(j, k));
            for m in 0..3 {
                let e = epsilon(j, k, m);
                if e != 0.0 {
                    rhs = &rhs + &triad.q[m].scale_re(e);
                }
            }
            rule = rule.max(lhs.max_abs_diff(&rhs));
        }
    }
    let mut det_dev = 0.0_f64;
    let mut tr_dev = 0.0_f64;
    for q in &triad.q {
        det_dev = det_dev.max((q.det() - c(1.0, 0.0)).norm());
        tr_dev = tr_dev.max(q.trace().norm());
    }
    TriadReport {
        rule_deviation: rule,
        det_deviation: det_dev,
        trace_deviation: tr_dev,
    }
}

/// Error unless the triad satisfies the rule within `tol`.
pub fn require_triad(triad: &UnitTriad, tol: f64) -> Result<()> {
    let report = verify_triad(triad);
    if report.passes(tol) {
        Ok(())
    } else {
        Err(Error::InvalidTriad {
            deviation: report.max_deviation(),
        })
    }
}
