//! Timelike surfaces in R^4_1 obtained from Chebyshev nets:
//! `f(u, v) = (u + v) d0 + X(u, v)`.
//!
//! In these null coordinates the metric is `(-1 + cos theta) du dv`, the mean
//! curvature vector is `-f_uv / (2 sin^2(theta/2))` and the surface is minimal
//! exactly when `X` splits as a sum of a curve in `u` and a curve in `v`.

use serde::Serialize;

use crate::chebnet::{
    angle_partials, build_first_kind, equivalent_immersion, euclidean_shape, first_form,
    inverse_equivalent_immersion, NetSurface, SphereCurve,
};
use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::numerics::{partials, Grid2D, Partial, SampledCurve, Sample};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coords {
    /// `(u, v)` with lightlike coordinate curves.
    Null,
    /// `(t, s) = (u + v, -u + v)`, metric `sin^2(theta/2)(-dt^2 + ds^2)`.
    Isothermal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftSurface {
    pub grid: Grid2D<Vec4>,
    pub theta: Grid2D<f64>,
    /// `<f_u, f_v> = -1 + cos theta` in null coordinates, `0` in isothermal ones.
    pub g12: Grid2D<f64>,
    pub source: Option<NetSurface>,
    pub coords: Coords,
}

impl LiftSurface {
    fn require_null(&self) -> Result<()> {
        match self.coords {
            Coords::Null => Ok(()),
            Coords::Isothermal => Err(Error::BadInput("operation needs null coordinates".into())),
        }
    }

    /// Spatial part `X` of the surface.
    pub fn spatial(&self) -> Grid2D<Vec4> {
        self.grid.map(Vec4::spatial)
    }

    /// Wraps a grid over `(t, s)` of the form `t d0 + Xbar`, with `theta`
    /// read off `cos theta = E - G` of `Xbar`.
    pub fn isothermal_from_grid(xbar: &Grid2D<Vec4>) -> Result<Self> {
        let ff = first_form(xbar);
        let theta = ff.e.zip_map(&ff.g, |e, g| (e - g).clamp(-1.0, 1.0).acos());
        let grid = xbar.map_indexed(|i, _, x| x.spatial() + Vec4::basis(0) * xbar.u.at(i));
        Ok(Self { g12: theta.map(|_| 0.0), grid, theta, source: None, coords: Coords::Isothermal })
    }
}

/// A node-wise field with the nodes where it could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeField<T> {
    /// Degenerate nodes hold zero.
    pub values: Grid2D<T>,
    pub degenerate: Vec<(usize, usize)>,
}

impl<T: Sample> NodeField<T> {
    fn build(shape: &Grid2D<f64>, bad: impl Fn(usize, usize) -> bool, f: impl Fn(usize, usize) -> T) -> Result<Self> {
        let mut degenerate = Vec::new();
        let values = shape.map_indexed(|i, j, _| if bad(i, j) { T::zero() } else { f(i, j) });
        for (i, j, _) in shape.iter() {
            if bad(i, j) {
                degenerate.push((i, j));
            }
        }
        if degenerate.len() == shape.values().len() {
            return Err(Error::DegenerateAngle { count: degenerate.len() });
        }
        Ok(Self { values, degenerate })
    }

    fn is_degenerate(&self, i: usize, j: usize) -> bool {
        self.degenerate.contains(&(i, j))
    }

    fn sup_by(&self, interior_only: bool, norm: impl Fn(T) -> f64) -> f64 {
        self.values
            .iter()
            .filter(|&(i, j, _)| !interior_only || self.values.is_interior(i, j))
            .filter(|&(i, j, _)| self.degenerate.is_empty() || !self.is_degenerate(i, j))
            .fold(0.0, |m, (_, _, x)| m.max(norm(x)))
    }
}

impl NodeField<f64> {
    pub fn sup_abs(&self, interior_only: bool) -> f64 {
        self.sup_by(interior_only, f64::abs)
    }
}

impl NodeField<Vec4> {
    /// Largest Euclidean norm over evaluated nodes.
    pub fn sup_norm(&self, interior_only: bool) -> f64 {
        self.sup_by(interior_only, Vec4::euclid_norm)
    }
}

fn lift_unchecked(net: &NetSurface, x0_offset: f64) -> LiftSurface {
    let x = &net.grid;
    let grid = x.map_indexed(|i, j, p| p.spatial() + Vec4::basis(0) * (x.u.at(i) + x.v.at(j) + x0_offset));
    LiftSurface {
        grid,
        theta: net.theta.clone(),
        g12: net.f.map(|f| -1.0 + f),
        source: Some(net.clone()),
        coords: Coords::Null,
    }
}

/// `f(u, v) = (u + v) d0 + X(u, v)` for a Chebyshev net `X`.
pub fn lift_net(net: &NetSurface) -> Result<LiftSurface> {
    let report = net.chebyshev_report(tol::CHEBYSHEV);
    if !report.pass {
        return Err(Error::NotChebyshev { e_dev: report.sup_e_dev, g_dev: report.sup_g_dev, f_sup: report.sup_f });
    }
    Ok(lift_unchecked(net, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullCoordsReport {
    /// `sup |<f_u, f_u>|`.
    pub sup_uu: f64,
    /// `sup |<f_v, f_v>|`.
    pub sup_vv: f64,
    /// `sup |<f_u, f_v> - (-1 + cos theta)|`.
    pub sup_uv: f64,
}

impl NullCoordsReport {
    pub fn max(&self) -> f64 {
        self.sup_uu.max(self.sup_vv).max(self.sup_uv)
    }
}

/// Lightlike-coordinate residuals over interior nodes.
pub fn verify_null_coords(s: &LiftSurface) -> Result<NullCoordsReport> {
    s.require_null()?;
    let fu = partials(&s.grid, Partial::U);
    let fv = partials(&s.grid, Partial::V);
    let mut r = NullCoordsReport { sup_uu: 0.0, sup_vv: 0.0, sup_uv: 0.0 };
    for (i, j, a) in fu.iter() {
        if !fu.is_interior(i, j) {
            continue;
        }
        let b = fv.get(i, j);
        r.sup_uu = r.sup_uu.max(a.inner(a).abs());
        r.sup_vv = r.sup_vv.max(b.inner(b).abs());
        r.sup_uv = r.sup_uv.max((a.inner(b) - (-1.0 + s.theta.get(i, j).cos())).abs());
    }
    Ok(r)
}

fn half_angle_sq(theta: f64) -> f64 {
    (1.0 - theta.cos()) / 2.0
}

/// `H_f = -f_uv / (2 sin^2(theta/2))`. Nodes with `sin^2(theta/2) <= ANGLE`
/// are skipped.
pub fn mean_curvature(s: &LiftSurface) -> Result<NodeField<Vec4>> {
    s.require_null()?;
    let fuv = partials(&s.grid, Partial::UV);
    let theta = &s.theta;
    NodeField::build(
        theta,
        |i, j| half_angle_sq(theta.get(i, j)) <= tol::ANGLE,
        |i, j| fuv.get(i, j) * (-0.5 / half_angle_sq(theta.get(i, j))),
    )
}

/// Unit spacelike normals `etilde = ((1 + cos) d0 + X_u + X_v) / sin` and
/// `e2 = X_u x X_v / sin`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFrame {
    pub etilde: NodeField<Vec4>,
    pub e2: NodeField<Vec4>,
}

pub fn normal_frame(s: &LiftSurface) -> Result<NormalFrame> {
    s.require_null()?;
    let x = s.spatial();
    let xu = partials(&x, Partial::U);
    let xv = partials(&x, Partial::V);
    let theta = &s.theta;
    let bad = |i: usize, j: usize| theta.get(i, j).sin() <= tol::ANGLE;
    let etilde = NodeField::build(theta, bad, |i, j| {
        let th = theta.get(i, j);
        (Vec4::basis(0) * (1.0 + th.cos()) + xu.get(i, j) + xv.get(i, j)) / th.sin()
    })?;
    let e2 = NodeField::build(theta, bad, |i, j| xu.get(i, j).cross3(xv.get(i, j)) / theta.get(i, j).sin())?;
    Ok(NormalFrame { etilde, e2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelReport {
    /// `sup ||H - <H, e2> e2||`.
    pub sup_off_line: f64,
    /// `sup |<H, etilde>|`.
    pub sup_etilde: f64,
    pub sup_h: f64,
}

/// How far the mean curvature vector strays from the line of `e2`.
pub fn h_parallel_e2(s: &LiftSurface) -> Result<ParallelReport> {
    let h = mean_curvature(s)?;
    let frame = normal_frame(s)?;
    let mut r = ParallelReport { sup_off_line: 0.0, sup_etilde: 0.0, sup_h: h.sup_norm(false) };
    for (i, j, hv) in h.values.iter() {
        if h.is_degenerate(i, j) || frame.e2.is_degenerate(i, j) {
            continue;
        }
        let (e2, et) = (frame.e2.values.get(i, j), frame.etilde.values.get(i, j));
        r.sup_off_line = r.sup_off_line.max((hv - e2 * hv.inner(e2)).euclid_norm());
        r.sup_etilde = r.sup_etilde.max(hv.inner(et).abs());
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurvatureRoute {
    /// From `theta` alone: `(theta_u theta_v - theta_uv sin) / (1 - cos)^2`.
    Direct,
    /// Through the net curvature: `(theta_u theta_v + K_T sin^2) / (1 - cos)^2`.
    ViaNet,
}

/// Gaussian curvature of the lift. Nodes with `1 - cos theta <= ANGLE` are
/// skipped.
pub fn gaussian_curvature(s: &LiftSurface, route: CurvatureRoute) -> Result<NodeField<f64>> {
    s.require_null()?;
    let theta = &s.theta;
    let ap = angle_partials(theta);
    let k_t = match route {
        CurvatureRoute::Direct => None,
        CurvatureRoute::ViaNet => Some(euclidean_shape(s.source.as_ref().ok_or(Error::MissingSource)?)?.k_t),
    };
    NodeField::build(
        theta,
        |i, j| 1.0 - theta.get(i, j).cos() <= tol::ANGLE,
        |i, j| {
            let th = theta.get(i, j);
            let first = ap.theta_u.get(i, j) * ap.theta_v.get(i, j);
            let second = match &k_t {
                None => -ap.theta_uv.get(i, j) * th.sin(),
                Some(k) => k.get(i, j) * th.sin().powi(2),
            };
            (first + second) / (1.0 - th.cos()).powi(2)
        },
    )
}

/// `f(u, v) = P0 + (u + v) d0 + int n0 + int n3`, a minimal surface for any
/// pair of sphere curves with `n0(u) != +-n3(v)`.
pub fn build_minimal(n0: &SphereCurve, n3: &SphereCurve, p0: Vec4) -> Result<LiftSurface> {
    let net = build_first_kind(n0, n3, p0.spatial())?;
    Ok(lift_unchecked(&net, p0.x0))
}

/// Recovers `(n0, n3, P0)` from a minimal lift in null coordinates.
///
/// `n0` is the row average of `f_u - d0`, `n3` the column average of
/// `f_v - d0`, each pushed back onto the sphere. `P0` is read at the node
/// nearest the parameter origin.
pub fn decompose_minimal(s: &LiftSurface) -> Result<(SphereCurve, SphereCurve, Vec4)> {
    decompose_minimal_with(s, tol::MINIMALITY)
}

pub fn decompose_minimal_with(s: &LiftSurface, tol: f64) -> Result<(SphereCurve, SphereCurve, Vec4)> {
    let sup_h = mean_curvature(s)?.sup_norm(false);
    if !(sup_h <= tol) {
        return Err(Error::NotMinimal { sup_h });
    }
    let g = &s.grid;
    let fu = partials(g, Partial::U);
    let fv = partials(g, Partial::V);
    let to_sphere = |sum: Vec4| {
        let p = sum.spatial();
        p / p.norm3()
    };
    let n0 = SampledCurve::from_fn(g.u, |u| {
        let i = g.u.nearest(u);
        to_sphere((0..g.nv()).fold(Vec4::ZERO, |acc, j| acc + fu.get(i, j)))
    });
    let n3 = SampledCurve::from_fn(g.v, |v| {
        let j = g.v.nearest(v);
        to_sphere((0..g.nu()).fold(Vec4::ZERO, |acc, i| acc + fv.get(i, j)))
    });
    let (ib, jb) = (g.u.base(), g.v.base());
    let p0 = g.get(ib, jb) - Vec4::basis(0) * (g.u.at(ib) + g.v.at(jb));
    Ok((SphereCurve::new(n0)?, SphereCurve::new(n3)?, p0))
}

/// `fbar(t, s) = t d0 + Xbar(t, s)` on `n x n` nodes, with `theta` carried
/// over by the same resampling.
pub fn isothermal_form(s: &LiftSurface, n: usize) -> Result<LiftSurface> {
    s.require_null()?;
    let xbar = equivalent_immersion(&s.spatial(), n)?;
    let theta = equivalent_immersion(&s.theta, n)?;
    let grid = xbar.map_indexed(|i, _, x| x + Vec4::basis(0) * xbar.u.at(i));
    Ok(LiftSurface { g12: theta.map(|_| 0.0), grid, theta, source: None, coords: Coords::Isothermal })
}

/// Back from isothermal to null coordinates: `f(u, v) = (u + v) d0 + Xbar(u + v, -u + v)`.
pub fn null_form(s: &LiftSurface, n: usize) -> Result<LiftSurface> {
    if s.coords != Coords::Isothermal {
        return Err(Error::BadInput("operation needs isothermal coordinates".into()));
    }
    let x = inverse_equivalent_immersion(&s.spatial(), n)?;
    let theta = inverse_equivalent_immersion(&s.theta, n)?;
    let grid = x.map_indexed(|i, j, p| p + Vec4::basis(0) * (x.u.at(i) + x.v.at(j)));
    Ok(LiftSurface { g12: theta.map(|t| -1.0 + t.cos()), grid, theta, source: None, coords: Coords::Null })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsothermalReport {
    /// `sup |<f_t, f_t> + sin^2(theta/2)|`.
    pub sup_tt: f64,
    /// `sup |<f_s, f_s> - sin^2(theta/2)|`.
    pub sup_ss: f64,
    /// `sup |<f_t, f_s>|`.
    pub sup_ts: f64,
}

impl IsothermalReport {
    pub fn max(&self) -> f64 {
        self.sup_tt.max(self.sup_ss).max(self.sup_ts)
    }
}

/// Isothermal metric residuals over interior nodes.
pub fn verify_isothermal(s: &LiftSurface) -> Result<IsothermalReport> {
    if s.coords != Coords::Isothermal {
        return Err(Error::BadInput("operation needs isothermal coordinates".into()));
    }
    let ft = partials(&s.grid, Partial::U);
    let fs = partials(&s.grid, Partial::V);
    let mut r = IsothermalReport { sup_tt: 0.0, sup_ss: 0.0, sup_ts: 0.0 };
    for (i, j, a) in ft.iter() {
        if !ft.is_interior(i, j) {
            continue;
        }
        let b = fs.get(i, j);
        let w = half_angle_sq(s.theta.get(i, j));
        r.sup_tt = r.sup_tt.max((a.inner(a) + w).abs());
        r.sup_ss = r.sup_ss.max((b.inner(b) - w).abs());
        r.sup_ts = r.sup_ts.max(a.inner(b).abs());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebnet::gallery::critical;
    use crate::numerics::Axis;

    fn planar(n: usize) -> NetSurface {
        let ax = Axis::linspace(-1.0, 1.0, n).unwrap();
        let t1 = SphereCurve::from_fn(ax, |_| Vec4::basis(1)).unwrap();
        let t2 = SphereCurve::from_fn(ax, |_| Vec4::basis(2)).unwrap();
        build_first_kind(&t1, &t2, Vec4::ZERO).unwrap()
    }

    #[test]
    fn planar_lift() {
        let s = lift_net(&planar(21)).unwrap();
        assert!(s.g12.values().iter().all(|&g| (g + 1.0).abs() < 1e-15));
        for (i, j, p) in s.grid.iter() {
            assert!((p.x0 - s.grid.u.at(i) - s.grid.v.at(j)).abs() < 1e-15);
        }
        assert!(mean_curvature(&s).unwrap().sup_norm(false) < 1e-10);
        assert!(gaussian_curvature(&s, CurvatureRoute::Direct).unwrap().sup_abs(false) < 1e-12);
        let iso = isothermal_form(&s, 11).unwrap();
        let r = verify_isothermal(&iso).unwrap();
        assert!(r.max() < 1e-12, "{r:?}");
        assert!((half_angle_sq(iso.theta.get(3, 3)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn critical_origin_values() {
        let net = critical::net(101).unwrap();
        let s = lift_net(&net).unwrap();
        let c = 50;
        assert!((s.g12.get(c, c) + 1.0).abs() < 1e-15);
        let frame = normal_frame(&s).unwrap();
        assert!(frame.etilde.values.get(c, c).max_abs_diff(Vec4::new(1.0, 1.0, 0.0, 1.0)) < 1e-8);
        assert!(frame.e2.values.get(c, c).max_abs_diff(Vec4::new(0.0, 0.0, -1.0, 0.0)) < 1e-8);
        for route in [CurvatureRoute::Direct, CurvatureRoute::ViaNet] {
            let k = gaussian_curvature(&s, route).unwrap();
            assert!((k.values.get(c, c) - 1.0).abs() < 1e-6, "{route:?}");
        }
    }

    #[test]
    fn routes_need_null_coords_and_source() {
        let mut s = lift_net(&critical::net(21).unwrap()).unwrap();
        s.source = None;
        assert_eq!(gaussian_curvature(&s, CurvatureRoute::ViaNet), Err(Error::MissingSource));
        let iso = isothermal_form(&s, 11).unwrap();
        assert!(mean_curvature(&iso).is_err());
    }

    #[test]
    fn corrupted_time_component_is_not_null() {
        let mut s = lift_net(&critical::net(51).unwrap()).unwrap();
        s.grid = s.grid.map(|p| Vec4::new(1.1 * p.x0, p.x1, p.x2, p.x3));
        assert!(verify_null_coords(&s).unwrap().sup_uu > 0.1);
    }

    #[test]
    fn lightlike_plane_from_constants() {
        let ax = Axis::linspace(-1.0, 1.0, 11).unwrap();
        let n0 = SphereCurve::from_fn(ax, |_| Vec4::basis(1)).unwrap();
        let n3 = SphereCurve::from_fn(ax, |_| Vec4::basis(3)).unwrap();
        let s = build_minimal(&n0, &n3, Vec4::new(2.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(mean_curvature(&s).unwrap().sup_norm(false) < 1e-12);
        let (a, b, p0) = decompose_minimal(&s).unwrap();
        assert!(a.points().iter().all(|p| p.max_abs_diff(Vec4::basis(1)) < 1e-12));
        assert!(b.points().iter().all(|p| p.max_abs_diff(Vec4::basis(3)) < 1e-12));
        assert!(p0.max_abs_diff(Vec4::new(2.0, 0.0, 1.0, 0.0)) < 1e-12);
    }
}
