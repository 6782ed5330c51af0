//! The rotated coordinates `t = u + v`, `s = -u + v` and the sum-one test.

use serde::Serialize;

use super::first_form;
use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::numerics::{interpolate_grid, Axis, Grid2D, Sample};

const INTERP_WIDTH: usize = 6;

fn square(center: (f64, f64), half: f64, n: usize) -> Result<(Axis, Axis)> {
    if !(half > 0.0) || n < 3 {
        return Err(Error::EmptyOverlap);
    }
    Ok((
        Axis::linspace(center.0 - half, center.0 + half, n)?,
        Axis::linspace(center.1 - half, center.1 + half, n)?,
    ))
}

fn half_widths<T>(g: &Grid2D<T>) -> (f64, f64, f64, f64) {
    let (a, b) = ((g.u.max() - g.u.min) / 2.0, (g.v.max() - g.v.min) / 2.0);
    (g.u.min + a, g.v.min + b, a, b)
}

/// Resamples a field over `(u, v)` as `Xbar(t, s) = X((t - s)/2, (t + s)/2)`
/// on the largest square of the `(t, s)` plane inside the rotated domain,
/// with `n` nodes per side.
///
/// Off-node values come from 6-point tensor Lagrange interpolation. With equal
/// source spacings and `n - 1 = (min(nu, nv) - 1) / 2` every target node lands
/// on a source node and is copied exactly.
pub fn equivalent_immersion<T: Sample>(g: &Grid2D<T>, n: usize) -> Result<Grid2D<T>> {
    let (uc, vc, a, b) = half_widths(g);
    let (t, s) = square((uc + vc, vc - uc), a.min(b), n)?;
    Grid2D::from_fn(t, s, |t, s| interpolate_grid(g, (t - s) / 2.0, (t + s) / 2.0, INTERP_WIDTH))
}

/// The reverse change: `X(u, v) = Xbar(u + v, -u + v)` on the largest
/// `(u, v)` square inside the image of the `(t, s)` rectangle.
pub fn inverse_equivalent_immersion<T: Sample>(g: &Grid2D<T>, n: usize) -> Result<Grid2D<T>> {
    let (tc, sc, a, b) = half_widths(g);
    let (u, v) = square(((tc - sc) / 2.0, (tc + sc) / 2.0), a.min(b) / 2.0, n)?;
    Grid2D::from_fn(u, v, |u, v| interpolate_grid(g, u + v, v - u, INTERP_WIDTH))
}

/// `(E, F, G)` in `(u, v)` of a surface with metric `e dt^2 + g ds^2` in
/// `(t, s)`: `E = G = e + g`, `F = e - g`.
pub fn uv_metric_from_ts(e: f64, g: f64) -> (f64, f64, f64) {
    (e + g, e - g, e + g)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumOneReport {
    pub sup_sum_dev: f64,
    pub sup_f: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Passes iff `sup |E + G - 1| <= tol` on a grid over `(t, s)`.
pub fn check_sum_one(g: &Grid2D<Vec4>, tol: f64) -> SumOneReport {
    let ff = first_form(g);
    let sup_sum_dev = ff.e.zip_map(&ff.g, |e, g| e + g - 1.0).sup_abs(false);
    SumOneReport { sup_sum_dev, sup_f: ff.f.sup_abs(false), tol, pass: sup_sum_dev <= tol }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_nodes_are_copied() {
        let ax = Axis::linspace(-1.0, 1.0, 41).unwrap();
        let g = Grid2D::from_fn(ax, ax, |u, v| (3.0 * u).sin() * v.exp()).unwrap();
        let ts = equivalent_immersion(&g, 21).unwrap();
        assert!((ts.u.step - 2.0 * ax.step).abs() < 1e-15);
        for (i, j, x) in ts.iter() {
            let (t, s) = (ts.u.at(i), ts.v.at(j));
            let (u, v) = ((t - s) / 2.0, (t + s) / 2.0);
            assert_eq!(x, g.get(ax.nearest(u), ax.nearest(v)));
        }
        let back = inverse_equivalent_immersion(&ts, 11).unwrap();
        for (i, j, x) in back.iter() {
            let (u, v) = (back.u.at(i), back.v.at(j));
            assert_eq!(x, g.get(ax.nearest(u), ax.nearest(v)));
        }
    }

    #[test]
    fn planar_metric_halves() {
        let ax = Axis::linspace(-1.0, 1.0, 21).unwrap();
        let g = Grid2D::from_fn(ax, ax, |u, v| Vec4::spatial3(u, v, 0.0)).unwrap();
        let ts = equivalent_immersion(&g, 15).unwrap();
        let ff = first_form(&ts);
        assert!(ff.e.map(|x| x - 0.5).sup_abs(false) < 1e-12);
        assert!(ff.g.map(|x| x - 0.5).sup_abs(false) < 1e-12);
        assert!(ff.f.sup_abs(false) < 1e-12);
    }

    #[test]
    fn degenerate_target() {
        let ax = Axis::linspace(-1.0, 1.0, 5).unwrap();
        let g = Grid2D::from_fn(ax, ax, |u, _| u).unwrap();
        assert_eq!(equivalent_immersion(&g, 2), Err(Error::EmptyOverlap));
    }

    #[test]
    fn sum_one_examples() {
        let t = Axis::linspace(0.0, 1.0, 81).unwrap();
        let s = Axis::linspace(0.2, 1.2, 81).unwrap();
        let strip = Grid2D::from_fn(t, s, |t, s| Vec4::spatial3(t, s, 0.0)).unwrap();
        let r = check_sum_one(&strip, 1e-8);
        assert!(!r.pass && (r.sup_sum_dev - 1.0).abs() < 1e-10);
        // polar chart with radius cos s: E = cos^2 s, G = sin^2 s
        let polar = Grid2D::from_fn(t, s, |t, s| Vec4::spatial3(s.cos() * t.cos(), s.cos() * t.sin(), 0.0)).unwrap();
        let r = check_sum_one(&polar, 1e-8);
        assert!(r.pass && r.sup_f < 1e-10, "{r:?}");
        assert_eq!(uv_metric_from_ts(0.25, 0.75), (1.0, -0.5, 1.0));
    }
}
