//! Uniform tensor-product parameter grids, sampled fields and finite differences.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::rep::UnitTriad;

/// Minimum number of samples per axis.
pub const MIN_POINTS: usize = 5;

/// Margin consumed by one differentiation.
pub const STENCIL_MARGIN: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl GridAxis {
    pub fn new(name: impl Into<String>, start: f64, step: f64, len: usize) -> Self {
        Self {
            name: name.into(),
            start,
            step,
            len,
        }
    }

    /// Centred on `center` with `half` points on either side.
    pub fn centered(name: impl Into<String>, center: f64, step: f64, half: usize) -> Self {
        Self::new(name, center - step * half as f64, step, 2 * half + 1)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }
}

/// Row-major (last axis fastest) tensor-product grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    axes: Vec<GridAxis>,
}

impl Grid {
    pub fn new(axes: Vec<GridAxis>) -> Result<Grid> {
        if axes.is_empty() {
            return Err(Error::Grid("grid needs at least one axis".into()));
        }
        for a in &axes {
            if !(a.step > 0.0) || !a.step.is_finite() {
                return Err(Error::Grid(format!("axis {} has non-positive step {}", a.name, a.step)));
            }
            if a.len < MIN_POINTS {
                return Err(Error::Grid(format!(
                    "axis {} has {} points, at least {MIN_POINTS} required",
                    a.name, a.len
                )));
            }
        }
        Ok(Grid { axes })
    }

    pub fn line(name: &str, start: f64, step: f64, len: usize) -> Result<Grid> {
        Grid::new(vec![GridAxis::new(name, start, step, len)])
    }

    pub fn axes(&self) -> &[GridAxis] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len).collect()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.axes).fold(0, |acc, (&i, a)| acc * a.len + i)
    }

    pub fn multi(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for (slot, a) in out.iter_mut().zip(&self.axes).rev() {
            *slot = flat % a.len;
            flat /= a.len;
        }
        out
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        self.multi(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coord(i))
            .collect()
    }

    /// The grid with `margin` points removed at both ends of every axis.
    pub fn interior(&self, margin: usize) -> Result<Grid> {
        let axes = self
            .axes
            .iter()
            .map(|a| {
                if a.len <= 2 * margin {
                    Err(Error::Grid(format!(
                        "axis {} too short ({} points) for margin {margin}",
                        a.name, a.len
                    )))
                } else {
                    Ok(GridAxis::new(a.name.clone(), a.coord(margin), a.step, a.len - 2 * margin))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Grid { axes })
    }

    /// Same axes up to floating-point noise in the start values.
    pub fn compatible(&self, other: &Grid) -> bool {
        self.dim() == other.dim()
            && self.axes.iter().zip(&other.axes).all(|(a, b)| {
                a.len == b.len
                    && (a.step - b.step).abs() <= 1e-12 * a.step.abs()
                    && (a.start - b.start).abs() <= 1e-9 * a.step.abs()
            })
    }
}

/// Values that can be combined linearly by a stencil.
pub trait Linear: Clone {
    fn lincomb(terms: &[(f64, &Self)]) -> Self;
    fn max_abs(&self) -> f64;
    fn max_abs_diff(&self, other: &Self) -> f64;
}

impl Linear for f64 {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        terms.iter().map(|(w, v)| w * **v).sum()
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl Linear for [f64; 3] {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        let mut out = [0.0; 3];
        for (w, v) in terms {
            for j in 0..3 {
                out[j] += w * v[j];
            }
        }
        out
    }
    fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3).fold(0.0, |m, j| m.max((self[j] - other[j]).abs()))
    }
}

impl Linear for Complex64 {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        terms.iter().map(|(w, v)| **v * *w).sum()
    }
    fn max_abs(&self) -> f64 {
        self.norm()
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl<const N: usize> Linear for [Complex64; N] {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); N];
        for (w, v) in terms {
            for j in 0..N {
                out[j] += v[j] * *w;
            }
        }
        out
    }
    fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.norm()))
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..N).fold(0.0, |m, j| m.max((self[j] - other[j]).norm()))
    }
}

impl Linear for CMatrix {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        let mut out = CMatrix::zeros(terms[0].1.dim());
        for (w, v) in terms {
            out = &out + &v.scale_re(*w);
        }
        out
    }
    fn max_abs(&self) -> f64 {
        CMatrix::max_abs(self)
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        CMatrix::max_abs_diff(self, other)
    }
}

impl Linear for UnitTriad {
    fn lincomb(terms: &[(f64, &Self)]) -> Self {
        UnitTriad {
            q: [0, 1, 2].map(|k| {
                let parts: Vec<(f64, &CMatrix)> = terms.iter().map(|(w, t)| (*w, &t.q[k])).collect();
                CMatrix::lincomb(&parts)
            }),
        }
    }
    fn max_abs(&self) -> f64 {
        self.q.iter().fold(0.0, |m, q| m.max(q.max_abs()))
    }
    fn max_abs_diff(&self, other: &Self) -> f64 {
        UnitTriad::max_abs_diff(self, other)
    }
}

/// Values sampled at every point of a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field<T> {
    pub grid: Grid,
    pub values: Vec<T>,
}

impl<T> Field<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn sample(grid: &Grid, f: impl Fn(&[f64]) -> T) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.coords(i))).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn try_sample(grid: &Grid, f: impl Fn(&[f64]) -> Result<T>) -> Result<Self> {
        let values = (0..grid.len())
            .map(|i| f(&grid.coords(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Field<U> {
        Field {
            grid: self.grid.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn at(&self, idx: &[usize]) -> &T {
        &self.values[self.grid.flat(idx)]
    }

    /// Value at the point of `self.grid` with the coordinates of `flat` in `sub`, where
    /// `sub` is `self.grid.interior(margin)`.
    pub fn at_interior(&self, sub: &Grid, flat: usize, margin: usize) -> &T {
        let idx: Vec<usize> = sub.multi(flat).iter().map(|i| i + margin).collect();
        self.at(&idx)
    }

    /// Restriction to `self.grid.interior(margin)`.
    pub fn restrict(&self, margin: usize) -> Result<Field<T>>
    where
        T: Clone,
    {
        let sub = self.grid.interior(margin)?;
        let values = (0..sub.len())
            .map(|i| self.at_interior(&sub, i, margin).clone())
            .collect();
        Ok(Field { grid: sub, values })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stencil {
    /// `(f(x+h) - f(x-h)) / 2h`, second order.
    Central,
    /// One Richardson level on the central difference, fourth order.
    Richardson,
}

/// How derivatives are taken and when a grid counts as too coarse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffOptions {
    pub stencil: Stencil,
    /// Maximum tolerated central/Richardson disagreement relative to the field scale;
    /// `None` disables the check.
    pub accuracy_tol: Option<f64>,
}

impl Default for DiffOptions {
    fn default() -> Self {
        Self {
            stencil: Stencil::Richardson,
            accuracy_tol: Some(1e-3),
        }
    }
}

impl DiffOptions {
    pub fn central() -> Self {
        Self {
            stencil: Stencil::Central,
            accuracy_tol: None,
        }
    }

    pub fn unchecked(stencil: Stencil) -> Self {
        Self {
            stencil,
            accuracy_tol: None,
        }
    }
}

fn stencil_at<T: Linear>(field: &Field<T>, center: &[usize], axis: usize, h: f64, stencil: Stencil) -> T {
    let at = |off: isize| {
        let mut idx = center.to_vec();
        idx[axis] = (idx[axis] as isize + off) as usize;
        field.at(&idx)
    };
    let (p1, m1) = (at(1), at(-1));
    match stencil {
        Stencil::Central => T::lincomb(&[(0.5 / h, p1), (-0.5 / h, m1)]),
        Stencil::Richardson => {
            let (p2, m2) = (at(2), at(-2));
            let w = 1.0 / (12.0 * h);
            T::lincomb(&[(8.0 * w, p1), (-8.0 * w, m1), (-w, p2), (w, m2)])
        }
    }
}

/// Partial derivative along `axis`, on `grid.interior(STENCIL_MARGIN)`.
pub fn derivative<T: Linear>(field: &Field<T>, axis: usize, opts: DiffOptions) -> Result<Field<T>> {
    if axis >= field.grid.dim() {
        return Err(Error::Grid(format!("axis {axis} out of range")));
    }
    let sub = field.grid.interior(STENCIL_MARGIN)?;
    let h = field.grid.axes()[axis].step;
    let mut values = Vec::with_capacity(sub.len());
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for i in 0..sub.len() {
        let idx: Vec<usize> = sub.multi(i).iter().map(|j| j + STENCIL_MARGIN).collect();
        let d = stencil_at(field, &idx, axis, h, opts.stencil);
        if opts.accuracy_tol.is_some() {
            let other = match opts.stencil {
                Stencil::Central => Stencil::Richardson,
                Stencil::Richardson => Stencil::Central,
            };
            let d2 = stencil_at(field, &idx, axis, h, other);
            worst = worst.max(d.max_abs_diff(&d2));
            scale = scale.max(d.max_abs());
        }
        values.push(d);
    }
    if let Some(tol) = opts.accuracy_tol {
        let tolerance = tol * scale.max(1.0);
        if worst > tolerance {
            return Err(Error::Accuracy {
                disagreement: worst,
                tolerance,
            });
        }
    }
    Ok(Field { grid: sub, values })
}

/// Five-point fourth-order second derivative along `axis`, on the interior grid.
pub fn second_derivative<T: Linear>(field: &Field<T>, axis: usize) -> Result<Field<T>> {
    let sub = field.grid.interior(STENCIL_MARGIN)?;
    let h = field.grid.axes()[axis].step;
    let w = 1.0 / (12.0 * h * h);
    let values = (0..sub.len())
        .map(|i| {
            let idx: Vec<usize> = sub.multi(i).iter().map(|j| j + STENCIL_MARGIN).collect();
            let at = |off: isize| {
                let mut k = idx.clone();
                k[axis] = (k[axis] as isize + off) as usize;
                field.at(&k)
            };
            T::lincomb(&[
                (-w, at(2)),
                (16.0 * w, at(1)),
                (-30.0 * w, at(0)),
                (16.0 * w, at(-1)),
                (-w, at(-2)),
            ])
        })
        .collect();
    Ok(Field { grid: sub, values })
}
