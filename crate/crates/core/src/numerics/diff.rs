//! Finite differences and local polynomial interpolation on uniform nodes.

use super::grid::{combine, Axis, Grid2D, Sample, SampledCurve};

/// Stencil width used unless a caller asks otherwise. Seven points give
/// sixth-order first and second derivatives at interior nodes.
pub const DEFAULT_WIDTH: usize = 7;

/// Weights `w_k` such that `sum_k w_k f(x_k)` approximates `f^(order)(z)`,
/// by Fornberg's recursion. `order = 0` yields interpolation weights.
pub fn fd_weights(z: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > order, "{n} nodes cannot resolve derivative order {order}");
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Start of the `width`-point window serving node `i` of `n`: centered where
/// possible, shifted inward at the ends.
fn window_start(i: usize, n: usize, width: usize) -> usize {
    i.saturating_sub(width / 2).min(n - width)
}

/// Per-node stencils for the `order`-th derivative on `n` nodes of spacing
/// `step`. Only `width` distinct stencils exist; they are shared.
struct Stencils {
    width: usize,
    n: usize,
    /// `weights[offset]` for a node sitting `offset` places into its window.
    weights: Vec<Vec<f64>>,
}

impl Stencils {
    fn new(n: usize, step: f64, order: usize, width: usize) -> Self {
        let width = width.min(n);
        assert!(width > order, "{n} nodes cannot resolve derivative order {order}");
        let scale = step.powi(order as i32);
        let weights = (0..width)
            .map(|offset| {
                let nodes: Vec<f64> = (0..width).map(|k| k as f64 - offset as f64).collect();
                fd_weights(0.0, &nodes, order).into_iter().map(|w| w / scale).collect()
            })
            .collect();
        Self { width, n, weights }
    }

    fn apply<T: Sample>(&self, i: usize, at: impl Fn(usize) -> T) -> T {
        let start = window_start(i, self.n, self.width);
        let w = &self.weights[i - start];
        combine(w, (start..start + self.width).map(at))
    }
}

/// `order`-th derivative of uniformly spaced samples.
pub fn derivative<T: Sample>(values: &[T], step: f64, order: usize, width: usize) -> Vec<T> {
    let st = Stencils::new(values.len(), step, order, width);
    (0..values.len()).map(|i| st.apply(i, |k| values[k])).collect()
}

pub fn curve_derivative<T: Sample>(c: &SampledCurve<T>, order: usize) -> SampledCurve<T> {
    SampledCurve { axis: c.axis, points: derivative(&c.points, c.axis.step, order, DEFAULT_WIDTH) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partial {
    U,
    V,
    UU,
    VV,
    UV,
}

fn along_u<T: Sample>(g: &Grid2D<T>, order: usize, width: usize) -> Grid2D<T> {
    let st = Stencils::new(g.nu(), g.u.step, order, width);
    g.map_indexed(|i, j, _| st.apply(i, |k| g.get(k, j)))
}

fn along_v<T: Sample>(g: &Grid2D<T>, order: usize, width: usize) -> Grid2D<T> {
    let st = Stencils::new(g.nv(), g.v.step, order, width);
    g.map_indexed(|i, j, _| st.apply(j, |k| g.get(i, k)))
}

/// Partial derivative of a grid field with the default stencil width.
pub fn partials<T: Sample>(g: &Grid2D<T>, which: Partial) -> Grid2D<T> {
    partials_with(g, which, DEFAULT_WIDTH)
}

/// Partial derivative with a chosen stencil width (3 gives the classical
/// second-order central/one-sided differences). The mixed partial composes
/// the two first-derivative stencils, which is the cross stencil inside.
pub fn partials_with<T: Sample>(g: &Grid2D<T>, which: Partial, width: usize) -> Grid2D<T> {
    match which {
        Partial::U => along_u(g, 1, width),
        Partial::V => along_v(g, 1, width),
        Partial::UU => along_u(g, 2, width.max(3)),
        Partial::VV => along_v(g, 2, width.max(3)),
        Partial::UV => along_v(&along_u(g, 1, width), 1, width),
    }
}

/// Interpolation weights and window start for the point `x` on `axis`, using
/// a `width`-point local Lagrange polynomial. Nodes hit exactly return a unit
/// weight.
fn interp_stencil(axis: &Axis, x: f64, width: usize) -> (usize, Vec<f64>) {
    let width = width.min(axis.n);
    let s = (x - axis.min) / axis.step;
    let k = s.round();
    if (s - k).abs() < 1e-10 && k >= 0.0 && k <= (axis.n - 1) as f64 {
        let k = k as usize;
        let start = window_start(k, axis.n, width);
        let mut w = vec![0.0; width];
        w[k - start] = 1.0;
        return (start, w);
    }
    let cell = (s.floor().max(0.0) as usize).min(axis.n - 2);
    // Window with the containing cell in the middle.
    let start = (cell + 1).saturating_sub(width / 2).min(axis.n - width);
    let nodes: Vec<f64> = (start..start + width).map(|m| m as f64).collect();
    (start, fd_weights(s, &nodes, 0))
}

/// Value of the local Lagrange interpolant of a curve at parameter `x`.
pub fn interpolate_curve<T: Sample>(c: &SampledCurve<T>, x: f64, width: usize) -> T {
    let (start, w) = interp_stencil(&c.axis, x, width);
    combine(&w, (start..start + w.len()).map(|k| c.points[k]))
}

/// Tensor-product local Lagrange interpolation on a grid.
pub fn interpolate_grid<T: Sample>(g: &Grid2D<T>, u: f64, v: f64, width: usize) -> T {
    let (su, wu) = interp_stencil(&g.u, u, width);
    let (sv, wv) = interp_stencil(&g.v, v, width);
    let rows = (su..su + wu.len()).map(|i| combine(&wv, (sv..sv + wv.len()).map(|j| g.get(i, j))));
    combine(&wu, rows)
}
