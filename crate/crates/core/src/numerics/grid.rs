use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::Vec4;

/// Node payloads that can be combined linearly.
pub trait Sample: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, k: f64) -> Self;
}

impl Sample for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl Sample for Vec4 {
    fn zero() -> Self {
        Vec4::ZERO
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl Sample for [f64; 3] {
    fn zero() -> Self {
        [0.0; 3]
    }
    fn add(self, o: Self) -> Self {
        [self[0] + o[0], self[1] + o[1], self[2] + o[2]]
    }
    fn scale(self, k: f64) -> Self {
        [self[0] * k, self[1] * k, self[2] * k]
    }
}

/// Weighted sum `sum_k w_k x_k` with a fixed summation order.
pub fn combine<T: Sample>(weights: &[f64], values: impl IntoIterator<Item = T>) -> T {
    weights.iter().zip(values).fold(T::zero(), |acc, (&w, x)| acc.add(x.scale(w)))
}

/// A uniform sampling `min, min + step, ..., min + (n-1) step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub step: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(min: f64, step: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && step.is_finite() && step > 0.0) {
            return Err(Error::BadGrid(format!("axis needs finite min and positive step, got {min}, {step}")));
        }
        if n < 2 {
            return Err(Error::BadGrid(format!("axis needs at least 2 nodes, got {n}")));
        }
        Ok(Self { min, step, n })
    }

    /// `n` nodes spanning `[min, max]` inclusive.
    pub fn linspace(min: f64, max: f64, n: usize) -> Result<Self> {
        if n < 2 || !(max > min) {
            return Err(Error::BadGrid(format!("bad range [{min}, {max}] with {n} nodes")));
        }
        Self::new(min, (max - min) / (n - 1) as f64, n)
    }

    /// Builds an axis from explicit node positions, which must be uniform.
    pub fn from_nodes(nodes: &[f64]) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::BadGrid("fewer than 2 nodes".into()));
        }
        let n = nodes.len();
        let step = (nodes[n - 1] - nodes[0]) / (n - 1) as f64;
        let axis = Self::new(nodes[0], step, n)?;
        for (i, &t) in nodes.iter().enumerate() {
            if (t - axis.at(i)).abs() > 1e-9 * step.max(1.0) {
                return Err(Error::BadGrid(format!("nonuniform spacing at node {i}: {t} vs {}", axis.at(i))));
            }
        }
        Ok(axis)
    }

    pub fn at(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn max(&self) -> f64 {
        self.at(self.n - 1)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.at(i))
    }

    /// Index of the node closest to `x`, clamped to the axis.
    pub fn nearest(&self, x: f64) -> usize {
        let k = ((x - self.min) / self.step).round();
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }

    /// Node closest to the parameter origin; integrals are based there.
    pub fn base(&self) -> usize {
        self.nearest(0.0)
    }

    pub fn contains(&self, x: f64) -> bool {
        let slack = 1e-12 * self.step;
        x >= self.min - slack && x <= self.max() + slack
    }

    pub fn same_as(&self, other: &Axis) -> bool {
        self.n == other.n
            && (self.min - other.min).abs() <= 1e-12 * self.step.max(1.0)
            && (self.step - other.step).abs() <= 1e-12 * self.step
    }
}

/// A curve sampled on a uniform parameter axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<T> {
    pub axis: Axis,
    pub points: Vec<T>,
}

impl<T: Sample> SampledCurve<T> {
    pub fn new(axis: Axis, points: Vec<T>) -> Result<Self> {
        if points.len() != axis.n {
            return Err(Error::BadGrid(format!("{} points for {} nodes", points.len(), axis.n)));
        }
        Ok(Self { axis, points })
    }

    pub fn from_fn(axis: Axis, f: impl Fn(f64) -> T) -> Self {
        let points = axis.nodes().map(f).collect();
        Self { axis, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn t(&self, i: usize) -> f64 {
        self.axis.at(i)
    }

    pub fn map<U: Sample>(&self, f: impl Fn(T) -> U) -> SampledCurve<U> {
        SampledCurve { axis: self.axis, points: self.points.iter().map(|&p| f(p)).collect() }
    }
}

/// Uniform rectangular grid of node payloads, row-major:
/// node `(i, j)` sits at `(u.at(i), v.at(j))` and is stored at `i * nv + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D<T> {
    pub u: Axis,
    pub v: Axis,
    values: Vec<T>,
}

impl<T: Sample> Grid2D<T> {
    pub fn new(u: Axis, v: Axis, values: Vec<T>) -> Result<Self> {
        if u.n < 3 || v.n < 3 {
            return Err(Error::BadGrid(format!("grid needs at least 3x3 nodes, got {}x{}", u.n, v.n)));
        }
        if values.len() != u.n * v.n {
            return Err(Error::BadGrid(format!("{} values for a {}x{} grid", values.len(), u.n, v.n)));
        }
        Ok(Self { u, v, values })
    }

    pub fn from_fn(u: Axis, v: Axis, f: impl Fn(f64, f64) -> T) -> Result<Self> {
        let mut values = Vec::with_capacity(u.n * v.n);
        for i in 0..u.n {
            let x = u.at(i);
            for j in 0..v.n {
                values.push(f(x, v.at(j)));
            }
        }
        Self::new(u, v, values)
    }

    pub fn nu(&self) -> usize {
        self.u.n
    }

    pub fn nv(&self) -> usize {
        self.v.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.v.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        let nv = self.v.n;
        self.values[i * nv + j] = x;
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        i > 0 && j > 0 && i + 1 < self.u.n && j + 1 < self.v.n
    }

    /// Iterates `(i, j, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        let nv = self.v.n;
        self.values.iter().enumerate().map(move |(k, &x)| (k / nv, k % nv, x))
    }

    pub fn map<U: Sample>(&self, f: impl Fn(T) -> U) -> Grid2D<U> {
        Grid2D { u: self.u, v: self.v, values: self.values.iter().map(|&x| f(x)).collect() }
    }

    /// Nodewise map with access to the node indices.
    pub fn map_indexed<U: Sample>(&self, f: impl Fn(usize, usize, T) -> U) -> Grid2D<U> {
        Grid2D { u: self.u, v: self.v, values: self.iter().map(|(i, j, x)| f(i, j, x)).collect() }
    }

    pub fn zip_map<S: Sample, U: Sample>(&self, other: &Grid2D<S>, f: impl Fn(T, S) -> U) -> Grid2D<U> {
        assert!(self.same_shape(other), "grid shapes differ");
        Grid2D {
            u: self.u,
            v: self.v,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn same_shape<S>(&self, other: &Grid2D<S>) -> bool {
        self.u.same_as(&other.u) && self.v.same_as(&other.v)
    }

    /// Column `j` as a curve over the `u` axis.
    pub fn column(&self, j: usize) -> SampledCurve<T> {
        SampledCurve { axis: self.u, points: (0..self.u.n).map(|i| self.get(i, j)).collect() }
    }

    /// Row `i` as a curve over the `v` axis.
    pub fn row(&self, i: usize) -> SampledCurve<T> {
        SampledCurve { axis: self.v, points: (0..self.v.n).map(|j| self.get(i, j)).collect() }
    }
}

impl Grid2D<f64> {
    /// Largest `|value|`, optionally over interior nodes only.
    pub fn sup_abs(&self, interior_only: bool) -> f64 {
        self.iter()
            .filter(|&(i, j, _)| !interior_only || self.is_interior(i, j))
            .fold(0.0, |m, (_, _, x)| m.max(x.abs()))
    }
}

impl Grid2D<Vec4> {
    /// Largest Euclidean norm, optionally over interior nodes only.
    pub fn sup_norm(&self, interior_only: bool) -> f64 {
        self.iter()
            .filter(|&(i, j, _)| !interior_only || self.is_interior(i, j))
            .fold(0.0, |m, (_, _, x)| m.max(x.euclid_norm()))
    }

    /// Largest Euclidean distance between corresponding nodes.
    pub fn sup_distance(&self, other: &Grid2D<Vec4>) -> f64 {
        self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((*a - *b).euclid_norm()))
    }
}

/// Sup norm and trapezoid-weighted L2 norm of a scalar field.
pub fn sup_and_l2(g: &Grid2D<f64>) -> (f64, f64) {
    let wu = |i: usize| if i == 0 || i + 1 == g.u.n { 0.5 } else { 1.0 };
    let wv = |j: usize| if j == 0 || j + 1 == g.v.n { 0.5 } else { 1.0 };
    let mut sup = 0.0f64;
    let mut sum = 0.0;
    for (i, j, x) in g.iter() {
        sup = sup.max(x.abs());
        sum += wu(i) * wv(j) * x * x;
    }
    (sup, (sum * g.u.step * g.v.step).sqrt())
}
