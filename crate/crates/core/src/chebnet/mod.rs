//! Chebyshev nets in `E = {0} x R^3`: immersions with `E = G = 1` and
//! `F = cos(theta)`, in particular nets of first kind built from two sphere
//! curves, plus the Euclidean shape quantities of the net.

mod coords;
pub mod gallery;

pub use coords::{check_sum_one, equivalent_immersion, inverse_equivalent_immersion, uv_metric_from_ts, SumOneReport};
pub use gallery::{gallery, Gallery, GalleryName};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::numerics::{cumulative_integral, partials, Axis, Grid2D, Partial, SampledCurve};
use crate::tol;

/// A curve on the unit sphere of `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereCurve {
    pub curve: SampledCurve<Vec4>,
    /// Name of the closed form the samples came from, if any.
    pub tag: Option<String>,
}

impl SphereCurve {
    pub fn new(curve: SampledCurve<Vec4>) -> Result<Self> {
        for (index, p) in curve.points.iter().enumerate() {
            let deviation = p.x0.abs().max((p.norm3() - 1.0).abs());
            if !(deviation <= tol::SPHERE) {
                return Err(Error::BadSphereCurve { index, deviation });
            }
        }
        Ok(Self { curve, tag: None })
    }

    pub fn from_fn(axis: Axis, f: impl Fn(f64) -> Vec4) -> Result<Self> {
        Self::new(SampledCurve::from_fn(axis, f))
    }

    /// Samples `f`, pushing every node radially onto the sphere.
    pub fn normalized(axis: Axis, f: impl Fn(f64) -> Vec4) -> Result<Self> {
        let curve = SampledCurve::from_fn(axis, |t| {
            let p = f(t).spatial();
            p / p.norm3()
        });
        Self::new(curve)
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = Some(tag.into());
        self
    }

    pub fn axis(&self) -> Axis {
        self.curve.axis
    }

    pub fn points(&self) -> &[Vec4] {
        &self.curve.points
    }

    pub fn len(&self) -> usize {
        self.curve.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curve.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NetKind {
    FirstKind,
    General,
}

/// A Chebyshev net sampled on a grid, with its first fundamental form and
/// angle.
#[derive(Debug, Clone, PartialEq)]
pub struct NetSurface {
    pub grid: Grid2D<Vec4>,
    pub e: Grid2D<f64>,
    pub f: Grid2D<f64>,
    pub g: Grid2D<f64>,
    /// `theta = arccos F` in `(0, pi)`, computed once at construction.
    pub theta: Grid2D<f64>,
    pub kind: NetKind,
    pub origin: Vec4,
}

impl NetSurface {
    /// Wraps an arbitrary grid of points of `E`, measuring its first form by
    /// finite differences. Fails unless the grid is a Chebyshev net within
    /// `tol`.
    pub fn from_grid(grid: Grid2D<Vec4>, tol: f64) -> Result<Self> {
        let report = is_chebyshev(&grid, tol);
        let Some(theta) = report.theta.clone() else {
            return Err(Error::NotChebyshev { e_dev: report.sup_e_dev, g_dev: report.sup_g_dev, f_sup: report.sup_f });
        };
        let FirstForm { e, f, g } = first_form(&grid);
        let origin = grid.get(grid.u.base(), grid.v.base());
        Ok(Self { grid, e, f, g, theta, kind: NetKind::General, origin })
    }

    /// The checks behind [`is_chebyshev`], applied to the stored form.
    pub fn chebyshev_report(&self, tol: f64) -> ChebyshevReport {
        report_from_form(&self.e, &self.f, &self.g, tol, tol::CHEBYSHEV_MARGIN)
    }
}

fn theta_from_f(f: &Grid2D<f64>) -> Grid2D<f64> {
    f.map(|x| x.clamp(-1.0, 1.0).acos())
}

/// Outcome of the product-grid scan for `T1(u) = +-T2(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisjointnessReport {
    /// `min over (u, v) of min(|T1 - T2|, |T1 + T2|)`.
    pub min_separation: f64,
    pub at_index: (usize, usize),
    pub at: (f64, f64),
    pub margin: f64,
    pub pass: bool,
}

pub fn check_disjointness(t1: &SphereCurve, t2: &SphereCurve) -> DisjointnessReport {
    check_disjointness_with(t1, t2, tol::DISJOINT_MARGIN)
}

pub fn check_disjointness_with(t1: &SphereCurve, t2: &SphereCurve, margin: f64) -> DisjointnessReport {
    let mut best = (f64::INFINITY, 0, 0);
    for (i, &a) in t1.points().iter().enumerate() {
        for (j, &b) in t2.points().iter().enumerate() {
            let sep = (a - b).norm3().min((a + b).norm3());
            if sep < best.0 {
                best = (sep, i, j);
            }
        }
    }
    let (min_separation, i, j) = best;
    DisjointnessReport {
        min_separation,
        at_index: (i, j),
        at: (t1.curve.t(i), t2.curve.t(j)),
        margin,
        pass: min_separation > margin,
    }
}

impl DisjointnessReport {
    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::DisjointnessViolated { u: self.at.0, v: self.at.1, separation: self.min_separation })
        }
    }
}

/// `X(u, v) = p0 + int_0^u T1 + int_0^v T2`. The integrals are based at the
/// node nearest parameter 0 on each axis. `E`, `F`, `G` come straight from
/// the generators (`F = <T1(u), T2(v)>`), without differentiation.
pub fn build_first_kind(t1: &SphereCurve, t2: &SphereCurve, p0: Vec4) -> Result<NetSurface> {
    check_disjointness(t1, t2).into_result()?;
    let a = cumulative_integral(&t1.curve, t1.axis().base())?;
    let b = cumulative_integral(&t2.curve, t2.axis().base())?;
    let p0 = p0.spatial();
    let (ua, va) = (t1.axis(), t2.axis());
    let idx = |x: f64, ax: &Axis| ax.nearest(x);
    let grid = Grid2D::from_fn(ua, va, |u, v| p0 + a.points[idx(u, &ua)] + b.points[idx(v, &va)])?;
    let e = Grid2D::from_fn(ua, va, |u, _| t1.points()[idx(u, &ua)].dot3(t1.points()[idx(u, &ua)]))?;
    let g = Grid2D::from_fn(ua, va, |_, v| t2.points()[idx(v, &va)].dot3(t2.points()[idx(v, &va)]))?;
    let f = Grid2D::from_fn(ua, va, |u, v| t1.points()[idx(u, &ua)].dot3(t2.points()[idx(v, &va)]))?;
    let theta = theta_from_f(&f);
    Ok(NetSurface { grid, e, f, g, theta, kind: NetKind::FirstKind, origin: p0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstForm {
    pub e: Grid2D<f64>,
    pub f: Grid2D<f64>,
    pub g: Grid2D<f64>,
}

/// `E = <X_u, X_u>`, `F = <X_u, X_v>`, `G = <X_v, X_v>` by finite differences.
pub fn first_form(x: &Grid2D<Vec4>) -> FirstForm {
    let xu = partials(x, Partial::U);
    let xv = partials(x, Partial::V);
    FirstForm {
        e: xu.zip_map(&xu, |a, b| a.dot3(b)),
        f: xu.zip_map(&xv, |a, b| a.dot3(b)),
        g: xv.zip_map(&xv, |a, b| a.dot3(b)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevReport {
    pub sup_e_dev: f64,
    pub sup_g_dev: f64,
    pub sup_f: f64,
    pub tol: f64,
    pub margin: f64,
    pub pass: bool,
    /// The angle grid, present on pass.
    pub theta: Option<Grid2D<f64>>,
}

fn report_from_form(e: &Grid2D<f64>, f: &Grid2D<f64>, g: &Grid2D<f64>, tol: f64, margin: f64) -> ChebyshevReport {
    let sup_e_dev = e.map(|x| x - 1.0).sup_abs(false);
    let sup_g_dev = g.map(|x| x - 1.0).sup_abs(false);
    let sup_f = f.sup_abs(false);
    let pass = sup_e_dev <= tol && sup_g_dev <= tol && sup_f <= 1.0 - margin;
    ChebyshevReport { sup_e_dev, sup_g_dev, sup_f, tol, margin, pass, theta: pass.then(|| theta_from_f(f)) }
}

/// Passes iff `sup|E - 1| <= tol`, `sup|G - 1| <= tol` and `sup|F| <= 1 - margin`.
pub fn is_chebyshev(x: &Grid2D<Vec4>, tol: f64) -> ChebyshevReport {
    is_chebyshev_with(x, tol, tol::CHEBYSHEV_MARGIN)
}

pub fn is_chebyshev_with(x: &Grid2D<Vec4>, tol: f64, margin: f64) -> ChebyshevReport {
    let FirstForm { e, f, g } = first_form(x);
    report_from_form(&e, &f, &g, tol, margin)
}

/// Gauss map, second fundamental form and Gaussian curvature of a net in `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanShape {
    pub gauss_map: Grid2D<Vec4>,
    /// Second form coefficients `e = <X_uu, N>`, `f = <X_uv, N>`, `g = <X_vv, N>`.
    pub l: Grid2D<f64>,
    pub m: Grid2D<f64>,
    pub n: Grid2D<f64>,
    pub k_t: Grid2D<f64>,
}

pub fn euclidean_shape(net: &NetSurface) -> Result<EuclideanShape> {
    let x = &net.grid;
    let xu = partials(x, Partial::U);
    let xv = partials(x, Partial::V);
    let xuu = partials(x, Partial::UU);
    let xuv = partials(x, Partial::UV);
    let xvv = partials(x, Partial::VV);

    let mut gauss = Vec::with_capacity(x.values().len());
    let mut det_first = Vec::with_capacity(x.values().len());
    for (i, j, _) in x.iter() {
        let (a, b) = (xu.get(i, j), xv.get(i, j));
        let det = a.dot3(a) * b.dot3(b) - a.dot3(b).powi(2);
        if !(det > tol::METRIC) {
            return Err(Error::DegenerateMetric { u: x.u.at(i), v: x.v.at(j) });
        }
        let c = a.cross3(b);
        gauss.push(c / c.norm3());
        det_first.push(det);
    }
    let gauss_map = Grid2D::new(x.u, x.v, gauss)?;
    let det_first = Grid2D::new(x.u, x.v, det_first)?;
    let l = xuu.zip_map(&gauss_map, |a, n| a.dot3(n));
    let m = xuv.zip_map(&gauss_map, |a, n| a.dot3(n));
    let n = xvv.zip_map(&gauss_map, |a, n| a.dot3(n));
    let k_t = det_first.map_indexed(|i, j, det| (l.get(i, j) * n.get(i, j) - m.get(i, j).powi(2)) / det);
    Ok(EuclideanShape { gauss_map, l, m, n, k_t })
}

/// First and mixed partials of the net angle.
#[derive(Debug, Clone, PartialEq)]
pub struct AnglePartials {
    pub theta_u: Grid2D<f64>,
    pub theta_v: Grid2D<f64>,
    pub theta_uv: Grid2D<f64>,
}

/// Differentiates `cos(theta)`, which stays smooth where `theta` develops a
/// cone-like tip as `theta -> 0`, and recovers the angle partials from
/// `theta_u = -c_u / sin`, `theta_uv = -c_uv / sin - cos c_u c_v / sin^3`.
pub fn angle_partials(theta: &Grid2D<f64>) -> AnglePartials {
    let c = theta.map(f64::cos);
    let cu = partials(&c, Partial::U);
    let cv = partials(&c, Partial::V);
    let cuv = partials(&c, Partial::UV);
    let sin = theta.map(f64::sin);
    let theta_u = cu.zip_map(&sin, |d, s| -d / s);
    let theta_v = cv.zip_map(&sin, |d, s| -d / s);
    let theta_uv = cuv.map_indexed(|i, j, d| {
        let (s, co) = (sin.get(i, j), c.get(i, j));
        -d / s - co * cu.get(i, j) * cv.get(i, j) / s.powi(3)
    });
    AnglePartials { theta_u, theta_v, theta_uv }
}

/// `theta_uv + K_T sin(theta)` on interior nodes; boundary nodes hold 0.
pub fn sine_gordon_residual(net: &NetSurface, shape: &EuclideanShape) -> Grid2D<f64> {
    let ap = angle_partials(&net.theta);
    ap.theta_uv.map_indexed(|i, j, tuv| {
        if net.theta.is_interior(i, j) {
            tuv + shape.k_t.get(i, j) * net.theta.get(i, j).sin()
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn axis(n: usize) -> Axis {
        Axis::linspace(-FRAC_PI_2 + 0.05, FRAC_PI_2 - 0.05, n).unwrap()
    }

    fn example_curves(n: usize) -> (SphereCurve, SphereCurve) {
        let t1 = SphereCurve::from_fn(axis(n), |u| Vec4::spatial3(u.cos(), u.sin(), 0.0)).unwrap();
        let t2 = SphereCurve::from_fn(axis(n), |v| Vec4::spatial3(0.0, v.sin(), v.cos())).unwrap();
        (t1, t2)
    }

    #[test]
    fn sphere_curve_validation() {
        let ax = Axis::linspace(0.0, 1.0, 5).unwrap();
        let off = SphereCurve::from_fn(ax, |t| Vec4::spatial3(1.0 + t * 1e-3, 0.0, 0.0));
        assert!(matches!(off, Err(Error::BadSphereCurve { index: 1, .. })));
        let timey = SphereCurve::from_fn(ax, |_| Vec4::new(0.1, 1.0, 0.0, 0.0));
        assert!(matches!(timey, Err(Error::BadSphereCurve { index: 0, .. })));
        assert!(SphereCurve::normalized(ax, |t| Vec4::spatial3(2.0, t, 0.0)).is_ok());
    }

    #[test]
    fn first_kind_angle_is_exact() {
        let (t1, t2) = example_curves(61);
        let net = build_first_kind(&t1, &t2, Vec4::ZERO).unwrap();
        for (i, j, f) in net.f.iter() {
            let (u, v) = (net.grid.u.at(i), net.grid.v.at(j));
            assert!((f - u.sin() * v.sin()).abs() < 1e-15);
            assert!((net.e.get(i, j) - 1.0).abs() < 1e-15);
        }
        assert_eq!(net.kind, NetKind::FirstKind);
        // finite-difference first form agrees with the direct one
        let ff = first_form(&net.grid);
        assert!(ff.f.zip_map(&net.f, |a, b| a - b).sup_abs(false) < 2e-6);
    }

    #[test]
    fn planar_net() {
        let ax = Axis::linspace(-1.0, 1.0, 11).unwrap();
        let t1 = SphereCurve::from_fn(ax, |_| Vec4::basis(1)).unwrap();
        let t2 = SphereCurve::from_fn(ax, |_| Vec4::basis(2)).unwrap();
        let net = build_first_kind(&t1, &t2, Vec4::spatial3(1.0, 2.0, 3.0)).unwrap();
        assert!(net.f.sup_abs(false) == 0.0);
        assert!(net.grid.get(10, 0).max_abs_diff(Vec4::spatial3(2.0, 1.0, 3.0)) < 1e-14);
        let shape = euclidean_shape(&net).unwrap();
        assert!(shape.k_t.sup_abs(false) < 1e-12);
        assert!(shape.l.sup_abs(false) < 1e-12 && shape.m.sup_abs(false) < 1e-12 && shape.n.sup_abs(false) < 1e-12);
        assert!(sine_gordon_residual(&net, &shape).sup_abs(true) < 1e-12);
    }

    #[test]
    fn coinciding_generators_are_rejected() {
        let (t1, _) = example_curves(41);
        let t2 = SphereCurve::from_fn(axis(21), |v| Vec4::spatial3(v.cos(), v.sin(), 0.0)).unwrap();
        let err = build_first_kind(&t1, &t2, Vec4::ZERO).unwrap_err();
        assert!(matches!(err, Error::DisjointnessViolated { .. }));
        let neg = SphereCurve::new(t1.curve.map(|p| -p)).unwrap();
        let r = check_disjointness(&t1, &neg);
        assert!(!r.pass && r.at_index.0 == 0);
    }

    #[test]
    fn disjoint_examples_pass() {
        let (t1, t2) = example_curves(101);
        let r = check_disjointness(&t1, &t2);
        assert!(r.pass);
        // closest approach of (cos u, sin u, 0) and (0, sin v, cos v): at the corners
        let brute = {
            let mut m = f64::INFINITY;
            for a in t1.points() {
                for b in t2.points() {
                    m = m.min((*a - *b).norm3()).min((*a + *b).norm3());
                }
            }
            m
        };
        assert_eq!(r.min_separation, brute);
        // great circles in orthogonal planes, away from their common points
        let ax = Axis::linspace(0.3, 2.8, 51).unwrap();
        let c1 = SphereCurve::from_fn(ax, |t| Vec4::spatial3(t.cos(), t.sin(), 0.0)).unwrap();
        let c2 = SphereCurve::from_fn(ax, |t| Vec4::spatial3(0.0, t.cos(), t.sin())).unwrap();
        assert!(check_disjointness(&c1, &c2).pass);
    }

    #[test]
    fn first_form_examples() {
        let ax = Axis::linspace(-1.0, 1.0, 9).unwrap();
        let plane = Grid2D::from_fn(ax, ax, |u, v| Vec4::spatial3(u, v, 0.0)).unwrap();
        let ff = first_form(&plane);
        assert!(ff.e.map(|x| x - 1.0).sup_abs(false) < 1e-10);
        assert!(ff.g.map(|x| x - 1.0).sup_abs(false) < 1e-10);
        assert!(ff.f.sup_abs(false) < 1e-10);
        let stretched = Grid2D::from_fn(ax, ax, |u, v| Vec4::spatial3(2.0 * u, v, 0.0)).unwrap();
        let ff = first_form(&stretched);
        assert!(ff.e.map(|x| x - 4.0).sup_abs(false) < 1e-10);
        assert!(!is_chebyshev(&stretched, 1e-6).pass);
        assert!(is_chebyshev(&plane, 1e-6).pass);
    }
}
