//! Two worked nets with closed-form oracles.
//!
//! `critical`: `T1(u) = (cos u, sin u, 0)`, `T2(v) = (0, sin v, cos v)` over a
//! square just inside `]-pi/2, pi/2[^2`. Its lift is minimal.
//!
//! `noncritical`: the surface of revolution `Y(t, s) = (x cos t, x sin t, y)`
//! with `x = tanh(s)/2` and `y' = sqrt(4 - tanh^2 s - sech^4 s)/2`, so that
//! `x^2 + x'^2 + y'^2 = 1`. In `(t, s)` it has `E + G = 1`, `F = 0`; in
//! `(u, v)` it is a Chebyshev net whose lift is not minimal.

use std::f64::consts::{FRAC_PI_2, PI};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{NetKind, NetSurface, SphereCurve};
use crate::error::{Error, Result};
use crate::minkowski::Vec4;
use crate::numerics::{simpson, Axis, Grid2D};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GalleryName {
    Critical,
    Noncritical,
}

impl FromStr for GalleryName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "critical" => Ok(Self::Critical),
            "noncritical" => Ok(Self::Noncritical),
            other => Err(Error::BadInput(format!("unknown gallery entry `{other}`"))),
        }
    }
}

impl GalleryName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Critical => "critical",
            Self::Noncritical => "noncritical",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gallery {
    pub name: GalleryName,
    /// The Chebyshev net over `(u, v)`.
    pub net: NetSurface,
    /// The same surface over `(t, s)`, for the noncritical entry.
    pub ts_grid: Option<Grid2D<Vec4>>,
}

/// Builds a gallery entry with `n` nodes per side (`n >= 7`).
pub fn gallery(name: GalleryName, n: usize) -> Result<Gallery> {
    if n < 7 {
        return Err(Error::BadGrid(format!("gallery grids need at least 7 nodes per side, got {n}")));
    }
    match name {
        GalleryName::Critical => Ok(Gallery { name, net: critical::net(n)?, ts_grid: None }),
        GalleryName::Noncritical => {
            let (ts, uv) = noncritical::grids(n)?;
            let net = NetSurface::from_grid(uv, tol::CHEBYSHEV)?;
            Ok(Gallery { name, net, ts_grid: Some(ts) })
        }
    }
}

pub mod critical {
    use super::*;

    /// Distance kept from the edges of `]-pi/2, pi/2[`.
    pub const MARGIN: f64 = 0.05;

    pub fn axis(n: usize) -> Result<Axis> {
        Axis::linspace(-FRAC_PI_2 + MARGIN, FRAC_PI_2 - MARGIN, n)
    }

    pub fn t1(u: f64) -> Vec4 {
        Vec4::spatial3(u.cos(), u.sin(), 0.0)
    }

    pub fn t2(v: f64) -> Vec4 {
        Vec4::spatial3(0.0, v.sin(), v.cos())
    }

    pub fn generators(n: usize) -> Result<(SphereCurve, SphereCurve)> {
        let ax = axis(n)?;
        Ok((
            SphereCurve::from_fn(ax, t1)?.with_tag("critical/T1"),
            SphereCurve::from_fn(ax, t2)?.with_tag("critical/T2"),
        ))
    }

    /// `X(u, v) = (sin u, 2 - cos u - cos v, sin v)`, integrals based at 0.
    pub fn position(u: f64, v: f64) -> Vec4 {
        Vec4::spatial3(u.sin(), 2.0 - u.cos() - v.cos(), v.sin())
    }

    pub fn f(u: f64, v: f64) -> f64 {
        u.sin() * v.sin()
    }

    fn root(u: f64, v: f64) -> f64 {
        (1.0 - f(u, v).powi(2)).sqrt()
    }

    pub fn gauss_map(u: f64, v: f64) -> Vec4 {
        Vec4::spatial3(u.sin() * v.cos(), -u.cos() * v.cos(), u.cos() * v.sin()) / root(u, v)
    }

    /// Coefficients of `du^2`, `du dv`, `dv^2` in the second form.
    pub fn second_form(u: f64, v: f64) -> (f64, f64, f64) {
        let r = root(u, v);
        (-v.cos() / r, 0.0, -u.cos() / r)
    }

    pub fn gaussian_curvature(u: f64, v: f64) -> f64 {
        u.cos() * v.cos() / (1.0 - f(u, v).powi(2)).powi(2)
    }

    pub fn net(n: usize) -> Result<NetSurface> {
        let ax = axis(n)?;
        let grid = Grid2D::from_fn(ax, ax, position)?;
        let one = Grid2D::from_fn(ax, ax, |_, _| 1.0)?;
        let fg = Grid2D::from_fn(ax, ax, f)?;
        let theta = fg.map(f64::acos);
        Ok(NetSurface { grid, e: one.clone(), f: fg, g: one, theta, kind: NetKind::FirstKind, origin: Vec4::ZERO })
    }
}

pub mod noncritical {
    use super::*;

    pub const T_MARGIN: f64 = 0.05;
    pub const S_MIN: f64 = 0.25;
    pub const S_MAX: f64 = 2.0;

    /// Simpson panels per grid interval when tabulating `y`.
    const PANELS: usize = 16;

    pub fn x(s: f64) -> f64 {
        s.tanh() / 2.0
    }

    pub fn x_prime(s: f64) -> f64 {
        0.5 / s.cosh().powi(2)
    }

    pub fn y_prime(s: f64) -> f64 {
        let th = s.tanh();
        let sech2 = 1.0 / s.cosh().powi(2);
        0.5 * (4.0 - th * th - sech2 * sech2).sqrt()
    }

    /// `y(s) = int_0^s y'`.
    pub fn y(s: f64) -> f64 {
        simpson(y_prime, 0.0, s, 4096)
    }

    /// `y` at every node of an axis, accumulated interval by interval.
    pub fn y_table(axis: &Axis) -> Vec<f64> {
        let lead = ((axis.min.abs() / axis.step).ceil() as usize).max(1) * PANELS;
        let mut acc = simpson(y_prime, 0.0, axis.min, lead);
        let mut out = Vec::with_capacity(axis.n);
        out.push(acc);
        for k in 1..axis.n {
            acc += simpson(y_prime, axis.at(k - 1), axis.at(k), PANELS);
            out.push(acc);
        }
        out
    }

    pub fn position_with(t: f64, s: f64, y: f64) -> Vec4 {
        let r = x(s);
        Vec4::spatial3(r * t.cos(), r * t.sin(), y)
    }

    pub fn position(t: f64, s: f64) -> Vec4 {
        position_with(t, s, y(s))
    }

    pub fn t_axis(n: usize) -> Result<Axis> {
        Axis::linspace(-PI + T_MARGIN, PI - T_MARGIN, n)
    }

    pub fn s_axis(n: usize) -> Result<Axis> {
        Axis::linspace(S_MIN, S_MAX, n)
    }

    /// The `(u, v)` square inside the `(t, s)` rectangle: center
    /// `((tc - sc)/2, (tc + sc)/2)`, half-width `min(A, B)/2`.
    pub fn uv_axes(n: usize) -> Result<(Axis, Axis)> {
        let (tc, a) = (0.0, PI - T_MARGIN);
        let (sc, b) = ((S_MIN + S_MAX) / 2.0, (S_MAX - S_MIN) / 2.0);
        let half = a.min(b) / 2.0;
        let (uc, vc) = ((tc - sc) / 2.0, (tc + sc) / 2.0);
        Ok((Axis::linspace(uc - half, uc + half, n)?, Axis::linspace(vc - half, vc + half, n)?))
    }

    /// The surface over `(t, s)` and over `(u, v)`, both evaluated in closed
    /// form apart from the tabulated `y`.
    pub fn grids(n: usize) -> Result<(Grid2D<Vec4>, Grid2D<Vec4>)> {
        let (ta, sa) = (t_axis(n)?, s_axis(n)?);
        let ys = y_table(&sa);
        let ts = Grid2D::from_fn(ta, sa, |t, s| position_with(t, s, ys[sa.nearest(s)]))?;

        let (ua, va) = uv_axes(n)?;
        // s = v - u runs over a lattice with the common step
        let lattice = Axis::new(va.min - ua.max(), ua.step, 2 * n - 1)?;
        let ys = y_table(&lattice);
        let uv = Grid2D::from_fn(ua, va, |u, v| {
            let s = v - u;
            position_with(u + v, s, ys[lattice.nearest(s)])
        })?;
        Ok((ts, uv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebnet::{build_first_kind, first_form};

    #[test]
    fn names_parse() {
        assert_eq!("critical".parse::<GalleryName>().unwrap(), GalleryName::Critical);
        assert!("other".parse::<GalleryName>().is_err());
    }

    #[test]
    fn critical_matches_quadrature() {
        let (t1, t2) = critical::generators(101).unwrap();
        let built = build_first_kind(&t1, &t2, Vec4::ZERO).unwrap();
        let closed = critical::net(101).unwrap();
        assert!(built.grid.sup_distance(&closed.grid) < 1e-10);
        assert!(built.f.zip_map(&closed.f, |a, b| a - b).sup_abs(false) < 1e-15);
    }

    #[test]
    fn noncritical_identity() {
        for s in [0.25, 0.7, 1.3, 2.0] {
            let sum = noncritical::x(s).powi(2) + noncritical::x_prime(s).powi(2) + noncritical::y_prime(s).powi(2);
            assert!((sum - 1.0).abs() < 1e-14);
        }
        let ax = noncritical::s_axis(21).unwrap();
        for (k, y) in noncritical::y_table(&ax).into_iter().enumerate() {
            assert!((y - noncritical::y(ax.at(k))).abs() < 1e-11);
        }
    }

    #[test]
    fn noncritical_square() {
        let (u, v) = noncritical::uv_axes(11).unwrap();
        assert!((u.min + 0.5625 + 0.4375).abs() < 1e-15 && (v.max() - 1.0).abs() < 1e-15);
        let g = gallery(GalleryName::Noncritical, 201).unwrap();
        let ff = first_form(g.ts_grid.as_ref().unwrap());
        assert!(ff.f.sup_abs(false) < 1e-9);
        assert!(gallery(GalleryName::Critical, 5).is_err());
    }
}
