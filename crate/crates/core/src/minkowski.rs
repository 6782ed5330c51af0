//! Closed-form vector algebra of Minkowski space R^4_1 with signature
//! (-,+,+,+), and the adapted frame of a spacelike plane.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Metric signs `eps_i = <d_i, d_i>`.
pub const SIGNATURE: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// A vector of R^4_1 in the standard basis `{d0, d1, d2, d3}`.
///
/// Points of the Euclidean slice `E = {0} x R^3` are `Vec4`s with `x0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vec4 {
    pub const ZERO: Vec4 = Vec4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    /// A point of `E`.
    pub const fn spatial3(x1: f64, x2: f64, x3: f64) -> Self {
        Self::new(0.0, x1, x2, x3)
    }

    /// The basis vector `d_i`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Self::from_array(c)
    }

    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn inner(self, w: Vec4) -> f64 {
        inner(self, w)
    }

    pub fn norm_sq(self) -> f64 {
        inner(self, self)
    }

    /// Norm with respect to the Euclidean structure of R^4.
    pub fn euclid_norm(self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    /// Drops the time component: the orthogonal projection onto `E`.
    pub fn spatial(self) -> Vec4 {
        Vec4::new(0.0, self.x1, self.x2, self.x3)
    }

    /// Euclidean dot product of the spatial parts.
    pub fn dot3(self, w: Vec4) -> f64 {
        self.x1 * w.x1 + self.x2 * w.x2 + self.x3 * w.x3
    }

    pub fn norm3(self) -> f64 {
        self.dot3(self).sqrt()
    }

    /// Cross product of the spatial parts, as a point of `E`.
    pub fn cross3(self, w: Vec4) -> Vec4 {
        Vec4::spatial3(
            self.x2 * w.x3 - self.x3 * w.x2,
            self.x3 * w.x1 - self.x1 * w.x3,
            self.x1 * w.x2 - self.x2 * w.x1,
        )
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Largest absolute component of `self - w`.
    pub fn max_abs_diff(self, w: Vec4) -> f64 {
        (self - w).to_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x0, self.x1, self.x2, self.x3)
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x0,
            1 => &self.x1,
            2 => &self.x2,
            3 => &self.x3,
            _ => panic!("Vec4 index {i} out of range"),
        }
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, w: Vec4) -> Vec4 {
        Vec4::new(self.x0 + w.x0, self.x1 + w.x1, self.x2 + w.x2, self.x3 + w.x3)
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, w: Vec4) -> Vec4 {
        Vec4::new(self.x0 - w.x0, self.x1 - w.x1, self.x2 - w.x2, self.x3 - w.x3)
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        Vec4::new(self.x0 * k, self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

impl Div<f64> for Vec4 {
    type Output = Vec4;
    fn div(self, k: f64) -> Vec4 {
        Vec4::new(self.x0 / k, self.x1 / k, self.x2 / k, self.x3 / k)
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, w: Vec4) {
        *self = *self + w;
    }
}

impl SubAssign for Vec4 {
    fn sub_assign(&mut self, w: Vec4) {
        *self = *self - w;
    }
}

/// `<v, w> = -v0 w0 + v1 w1 + v2 w2 + v3 w3`.
pub fn inner(v: Vec4, w: Vec4) -> f64 {
    -v.x0 * w.x0 + v.x1 * w.x1 + v.x2 * w.x2 + v.x3 * w.x3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Exact causal class. The zero vector is spacelike.
pub fn causal_class(v: Vec4) -> CausalClass {
    let q = v.norm_sq();
    if v == Vec4::ZERO || q > 0.0 {
        CausalClass::Spacelike
    } else if q < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// Causal class with `|<v,v>| <= tol * |v|^2` (Euclidean) counted as lightlike.
pub fn causal_class_tol(v: Vec4, tol: f64) -> CausalClass {
    if v == Vec4::ZERO {
        return CausalClass::Spacelike;
    }
    let q = v.norm_sq();
    let scale = v.euclid_norm().powi(2);
    if q.abs() <= tol * scale {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Determinant of the 4x4 matrix with rows `r0..r3`.
pub fn det4(r0: Vec4, r1: Vec4, r2: Vec4, r3: Vec4) -> f64 {
    let m = [r0.to_array(), r1.to_array(), r2.to_array(), r3.to_array()];
    let mut det = 0.0;
    for col in 0..4 {
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * m[0][col] * minor3(&m, col);
    }
    det
}

/// 3x3 minor of rows 1..4 with `skip` column removed.
fn minor3(m: &[[f64; 4]; 4], skip: usize) -> f64 {
    let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
    let a = |r: usize, c: usize| m[r][cols[c]];
    a(1, 0) * (a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1)) - a(1, 1) * (a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0))
        + a(1, 2) * (a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0))
}

/// The triple wedge product: the unique `r` with `<r, x> = det(x, u, v, w)`
/// for every `x`.
pub fn wedge3(u: Vec4, v: Vec4, w: Vec4) -> Vec4 {
    let m = [[0.0; 4], u.to_array(), v.to_array(), w.to_array()];
    let mut r = [0.0; 4];
    for (i, ri) in r.iter_mut().enumerate() {
        // det(d_i, u, v, w) is the cofactor along the first row.
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *ri = SIGNATURE[i] * sign * minor3(&m, i);
    }
    Vec4::from_array(r)
}

/// Central projection of a lightlike vector onto the unit sphere of `E`:
/// `(0, L1/L0, L2/L0, L3/L0)`.
pub fn project_lightlike(l: Vec4) -> Result<Vec4> {
    project_lightlike_tol(l, tol::LIGHTLIKE)
}

pub fn project_lightlike_tol(l: Vec4, tol: f64) -> Result<Vec4> {
    if causal_class_tol(l, tol) != CausalClass::Lightlike {
        return Err(Error::NotLightlike { inner: l.norm_sq() });
    }
    if l.x0.abs() <= tol::TIME_COMPONENT * l.euclid_norm().max(1.0) {
        return Err(Error::ZeroTimeComponent { value: l.x0 });
    }
    Ok(Vec4::spatial3(l.x1 / l.x0, l.x2 / l.x0, l.x3 / l.x0))
}

/// Adapted frame `(tau, a, b, nu)` of the spacelike plane `span{a, b}` together
/// with the sphere points `n0`, `n3` of the two lightlike directions of its
/// orthogonal complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiFrame {
    pub a: Vec4,
    pub b: Vec4,
    /// Future unit timelike normal to the plane.
    pub tau: Vec4,
    /// Spacelike unit normal with `nu0 = 0`; `nu = -tau ^ a ^ b`.
    pub nu: Vec4,
    /// `tau0 = sqrt(1 + a0^2 + b0^2) >= 1`.
    pub tau0: f64,
    pub n0: Vec4,
    pub n3: Vec4,
    /// `theta` in `(0, pi]` with `cos theta = <n0, n3>`.
    pub theta: f64,
    /// Present only when `tau0 > 1`.
    pub e1tilde: Option<Vec4>,
    pub e2tilde: Option<Vec4>,
    pub e: Option<Vec4>,
}

impl MinkowskiFrame {
    /// `l0 = d0 + n0`.
    pub fn l0(&self) -> Vec4 {
        Vec4::basis(0) + self.n0
    }

    /// `l3 = d0 + n3`.
    pub fn l3(&self) -> Vec4 {
        Vec4::basis(0) + self.n3
    }

    /// `sqrt(a0^2 + b0^2)`.
    pub fn time_tilt(&self) -> f64 {
        self.a.x0.hypot(self.b.x0)
    }

    /// Largest violation of the frame invariants: orthonormality of
    /// `(tau, a, b, nu)`, `nu0 = 0`, `tau0 >= 1`, `n0`/`n3` on `S^2`, the angle
    /// formula, the lightlike `l0`/`l3` with `<l0, l3> = -1 + cos theta`,
    /// positive orientation, and the half-angle basis when present.
    pub fn invariant_residual(&self) -> f64 {
        let mut r: Vec<f64> = vec![
            (self.tau.norm_sq() + 1.0).abs(),
            (self.a.norm_sq() - 1.0).abs(),
            (self.b.norm_sq() - 1.0).abs(),
            (self.nu.norm_sq() - 1.0).abs(),
            self.tau.inner(self.a).abs(),
            self.tau.inner(self.b).abs(),
            self.tau.inner(self.nu).abs(),
            self.a.inner(self.b).abs(),
            self.a.inner(self.nu).abs(),
            self.b.inner(self.nu).abs(),
            self.nu.x0.abs(),
            (self.tau0 - self.tau.x0).abs(),
            (1.0 - self.tau0).max(0.0),
            self.n0.x0.abs(),
            self.n3.x0.abs(),
            (self.n0.norm3() - 1.0).abs(),
            (self.n3.norm3() - 1.0).abs(),
            (self.theta.cos() - (1.0 - 2.0 / (self.tau0 * self.tau0))).abs(),
            self.l0().norm_sq().abs(),
            self.l3().norm_sq().abs(),
            (self.l0().inner(self.l3()) - (-1.0 + self.theta.cos())).abs(),
            (-det4(self.tau, self.a, self.b, self.nu)).max(0.0),
        ];
        if let (Some(e1), Some(e2), Some(e)) = (self.e1tilde, self.e2tilde, self.e) {
            // span{e1, e2} = span{a, b}: the projections onto span{a,b} are exact.
            let proj = |x: Vec4| self.a * x.inner(self.a) + self.b * x.inner(self.b);
            r.extend([
                (e1.norm_sq() - 1.0).abs(),
                (e2.norm_sq() - 1.0).abs(),
                e1.inner(e2).abs(),
                e2.x0.abs(),
                (proj(e1) - e1).euclid_norm(),
                (proj(e2) - e2).euclid_norm(),
                e.x0.abs(),
                (e.norm3() - 1.0).abs(),
            ]);
        }
        r.into_iter().fold(0.0, f64::max)
    }
}

/// Builds the adapted frame of `span{a, b}` with the default orthonormality
/// tolerance.
pub fn build_frame(a: Vec4, b: Vec4) -> Result<MinkowskiFrame> {
    build_frame_tol(a, b, tol::ORTHONORMAL)
}

pub fn build_frame_tol(a: Vec4, b: Vec4, tol: f64) -> Result<MinkowskiFrame> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::BadInput("non-finite frame input".into()));
    }
    let aa = a.norm_sq();
    let bb = b.norm_sq();
    let ab = a.inner(b);
    if (aa - 1.0).abs() > tol || (bb - 1.0).abs() > tol || ab.abs() > tol {
        return Err(Error::BadInput(format!(
            "{{a, b}} is not orthonormal spacelike: <a,a> = {aa}, <b,b> = {bb}, <a,b> = {ab:e}"
        )));
    }
    let d0 = Vec4::basis(0);
    let tilt_sq = a.x0 * a.x0 + b.x0 * b.x0;
    let tau0 = (1.0 + tilt_sq).sqrt();
    let tau = (d0 + a * a.x0 + b * b.x0) / tau0;
    // Unit, with nu0 = 0.
    let nu = -wedge3(tau, a, b);

    // (tau -+ nu)/tau0 has unit time component, so the projection is exact.
    let n0 = ((tau - nu) / tau0 - d0).spatial();
    let n3 = ((tau + nu) / tau0 - d0).spatial();
    let tilt = tilt_sq.sqrt();
    // sin(theta/2) = 1/tau0, cos(theta/2) = tilt/tau0.
    let theta = 2.0 * 1f64.atan2(tilt);

    let (e1tilde, e2tilde, e) = if tau0 > 1.0 && tilt_sq > 0.0 {
        let e1 = (a * a.x0 + b * b.x0) / tilt;
        let e2 = (a * -b.x0 + b * a.x0) / tilt;
        let e = (n0 + n3) * (tau0 / (2.0 * tilt));
        (Some(e1), Some(e2), Some(e))
    } else {
        (None, None, None)
    };

    Ok(MinkowskiFrame { a, b, tau, nu, tau0, n0, n3, theta, e1tilde, e2tilde, e })
}

/// Residuals of the half-angle identities and of the relations between the
/// non-orthogonal frame `{tau, e1tilde, e, nu}`. `None` marks an identity that
/// does not apply (`tau0 = 1`, where `e` is undefined).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameResiduals {
    pub sin_theta: f64,
    pub sin_half_theta: f64,
    pub cos_half_theta: f64,
    /// `tau - (d0 + sqrt(a0^2+b0^2) e1tilde)/tau0`.
    pub tau_from_e1tilde: Option<f64>,
    /// `tau - (tau0 d0 + tau0 cos(theta/2) e)`.
    pub tau_from_e: Option<f64>,
    /// `e1tilde - (cot(theta/2) d0 + cosec(theta/2) e)`.
    pub e1tilde_from_e: Option<f64>,
}

impl FrameResiduals {
    pub fn max(&self) -> f64 {
        [
            Some(self.sin_theta),
            Some(self.sin_half_theta),
            Some(self.cos_half_theta),
            self.tau_from_e1tilde,
            self.tau_from_e,
            self.e1tilde_from_e,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

pub fn frame_identity_residuals(f: &MinkowskiFrame) -> FrameResiduals {
    let tilt = f.time_tilt();
    let t2 = f.tau0 * f.tau0;
    let half = f.theta / 2.0;
    let d0 = Vec4::basis(0);
    let sin_theta = (f.theta.sin() - 2.0 * tilt / t2).abs();
    let sin_half_theta = (half.sin() - 1.0 / f.tau0).abs();
    let cos_half_theta = (half.cos() - tilt / f.tau0).abs();

    let (tau_from_e1tilde, tau_from_e, e1tilde_from_e) = match (f.e1tilde, f.e) {
        (Some(e1), Some(e)) => {
            let r1 = f.tau.max_abs_diff((d0 + e1 * tilt) / f.tau0);
            let r2 = f.tau.max_abs_diff(d0 * f.tau0 + e * (f.tau0 * half.cos()));
            let r3 = e1.max_abs_diff(d0 * (half.cos() / half.sin()) + e / half.sin());
            (Some(r1), Some(r2), Some(r3))
        }
        _ => (None, None, None),
    };
    FrameResiduals { sin_theta, sin_half_theta, cos_half_theta, tau_from_e1tilde, tau_from_e, e1tilde_from_e }
}

/// Minkowski-orthogonal projector onto the nondegenerate plane spanned by
/// `p` and `q`, given by its images of `d0, .., d3`.
pub fn plane_projector(p: Vec4, q: Vec4) -> Result<[Vec4; 4]> {
    let (gpp, gpq, gqq) = (p.inner(p), p.inner(q), q.inner(q));
    let det = gpp * gqq - gpq * gpq;
    let scale = p.euclid_norm().powi(2) * q.euclid_norm().powi(2);
    if !(det.abs() > 1e-14 * scale) {
        return Err(Error::BadInput(format!("plane is degenerate (Gram determinant {det:e})")));
    }
    let image = |x: Vec4| {
        let (xp, xq) = (x.inner(p), x.inner(q));
        p * ((gqq * xp - gpq * xq) / det) + q * ((gpp * xq - gpq * xp) / det)
    };
    Ok([0, 1, 2, 3].map(|i| image(Vec4::basis(i))))
}

/// Largest componentwise difference between two projectors.
pub fn projector_distance(a: &[Vec4; 4], b: &[Vec4; 4]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max(x.max_abs_diff(*y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: f64 = std::f64::consts::SQRT_2;

    fn d(i: usize) -> Vec4 {
        Vec4::basis(i)
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(d(0), d(0)), -1.0);
        assert_eq!(inner(d(0) + d(1), d(0) + d(1)), 0.0);
        let v = Vec4::new(1.0, S2, 0.0, 0.0);
        assert!((inner(v, v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_class(Vec4::ZERO), CausalClass::Spacelike);
        assert_eq!(causal_class(d(0)), CausalClass::Timelike);
        assert_eq!(causal_class(d(0) + d(3)), CausalClass::Lightlike);
        assert_eq!(causal_class(d(2)), CausalClass::Spacelike);
        let near = Vec4::new(1.0, 1.0 + 1e-12, 0.0, 0.0);
        assert_eq!(causal_class(near), CausalClass::Spacelike);
        assert_eq!(causal_class_tol(near, 1e-9), CausalClass::Lightlike);
    }

    /// Brute-force oracle: `r_i = eps_i det(d_i, u, v, w)`.
    fn wedge_oracle(u: Vec4, v: Vec4, w: Vec4) -> Vec4 {
        Vec4::from_array(std::array::from_fn(|i| SIGNATURE[i] * det4(d(i), u, v, w)))
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge3(d(1), d(2), d(3)), -d(0));
        assert_eq!(wedge3(d(0), d(2), d(3)), -d(1));
        let u = Vec4::new(0.3, -1.0, 2.0, 0.5);
        let w = Vec4::new(1.0, 0.2, 0.0, -0.7);
        assert!(wedge3(u, u, w).euclid_norm() < 1e-15);
        assert!(wedge3(u, w, d(2)).max_abs_diff(wedge_oracle(u, w, d(2))) < 1e-14);
        for x in 0..4 {
            let lhs = inner(wedge3(u, w, d(2)), d(x));
            assert!((lhs - det4(d(x), u, w, d(2))).abs() < 1e-14);
        }
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_lightlike(Vec4::new(1.0, 0.0, 0.0, 1.0)).unwrap(), d(3));
        assert_eq!(project_lightlike(Vec4::new(2.0, 0.0, 2.0, 0.0)).unwrap(), d(2));
        let p = project_lightlike(Vec4::new(S2, 1.0, 0.0, -1.0)).unwrap();
        assert!(p.max_abs_diff(Vec4::new(0.0, 1.0 / S2, 0.0, -1.0 / S2)) < 1e-15);
        assert!((p.norm3() - 1.0).abs() < 1e-15);
        assert!(matches!(project_lightlike(d(0)), Err(Error::NotLightlike { .. })));
        assert!(matches!(project_lightlike(d(1)), Err(Error::NotLightlike { .. })));
    }

    #[test]
    fn frame_of_coordinate_plane() {
        let f = build_frame(d(1), d(2)).unwrap();
        assert_eq!(f.tau, d(0));
        assert_eq!(f.nu, d(3));
        assert_eq!(f.n0, Vec4::new(0.0, 0.0, 0.0, -1.0));
        assert_eq!(f.n3, d(3));
        assert!((f.theta - std::f64::consts::PI).abs() < 1e-15);
        assert!(f.e.is_none() && f.e1tilde.is_none() && f.e2tilde.is_none());
        let r = frame_identity_residuals(&f);
        assert!(r.max() <= 1e-12);
        assert!(r.tau_from_e.is_none());
        assert!(f.invariant_residual() < 1e-14);
    }

    #[test]
    fn frame_of_boosted_plane() {
        let a = Vec4::new(1.0, S2, 0.0, 0.0);
        let f = build_frame(a, d(2)).unwrap();
        assert!(f.tau.max_abs_diff(Vec4::new(S2, 1.0, 0.0, 0.0)) < 1e-15);
        assert!(f.nu.max_abs_diff(d(3)) < 1e-15);
        assert!(f.n0.max_abs_diff(Vec4::new(0.0, 1.0 / S2, 0.0, -1.0 / S2)) < 1e-15);
        assert!(f.n3.max_abs_diff(Vec4::new(0.0, 1.0 / S2, 0.0, 1.0 / S2)) < 1e-15);
        assert!((f.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(f.e1tilde.unwrap().max_abs_diff(a) < 1e-15);
        assert!(f.e.unwrap().max_abs_diff(d(1)) < 1e-15);
        assert!(frame_identity_residuals(&f).max() <= 1e-12);
        assert!(f.invariant_residual() < 1e-14);
    }

    #[test]
    fn frame_with_unit_time_components() {
        // a0 = b0 = 1: a = (1, sqrt2, 0, 0), b = (1, x, y, 0) solved for <a,b> = 0, <b,b> = 1.
        let a = Vec4::new(1.0, S2, 0.0, 0.0);
        let b1 = 1.0 / S2;
        let b2 = (2.0 - b1 * b1).sqrt();
        let b = Vec4::new(1.0, b1, b2, 0.0);
        let f = build_frame(a, b).unwrap();
        assert!((f.tau0 - 3f64.sqrt()).abs() < 1e-14);
        assert!((f.theta.cos() - 1.0 / 3.0).abs() < 1e-14);
        assert!(((f.theta / 2.0).sin() - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(f.invariant_residual() < 1e-13);
    }

    #[test]
    fn spatial_minors_give_nu_scaled_by_tau0() {
        let a = Vec4::new(1.0, S2, 0.0, 0.0);
        let b = d(2);
        let delta = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
        let minors = Vec4::new(0.0, delta(2, 3), -delta(1, 3), delta(1, 2));
        assert!((minors.norm_sq() - 2.0).abs() < 1e-14);
        let f = build_frame(a, b).unwrap();
        assert!(minors.max_abs_diff(f.nu * f.tau0) < 1e-14);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(matches!(build_frame(d(1), d(1)), Err(Error::BadInput(_))));
        assert!(matches!(build_frame(d(0), d(1)), Err(Error::BadInput(_))));
        assert!(matches!(build_frame(d(1) * 2.0, d(2)), Err(Error::BadInput(_))));
    }
}
