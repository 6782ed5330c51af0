//! The Cauchy problem for timelike minimal surfaces: given a lightlike curve
//! `c` and a spacelike plane field `D = span{a, b}` along it, find a minimal
//! surface through `c` whose normal plane along `c` is `D`.
//!
//! The tangent plane along `c` is `D^perp`, whose two lightlike directions
//! project to `n0` and `n3` on the sphere. The data is admissible when
//! `c' = c0' (d0 + n0)`, and a solution is `build_minimal(n0, n3~, c(0))`
//! for any second generator `n3~` over `v` that starts at the value `n3`
//! takes on the curve.

mod solve;

pub use solve::{
    extension_curve, nonuniqueness, ruled_solution, solve, solve_pq, ExtensionChoice, NonuniquenessReport, PqSolution, Solution,
    SolveReport,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lift::{normal_frame, LiftSurface};
use crate::minkowski::{build_frame_tol, MinkowskiFrame, Vec4};
use crate::numerics::{
    curve_derivative, frenet, interpolate_curve, Axis, FrenetData, SampledCurve,
};
use crate::chebnet::SphereCurve;
use crate::tol;

const RESAMPLE_WIDTH: usize = 6;

/// Lightlike curve `c` with an orthonormal spacelike pair `a`, `b` along it,
/// all sampled on the same axis.
#[derive(Debug, Clone, PartialEq)]
pub struct BjorlingData {
    c: SampledCurve<Vec4>,
    a: SampledCurve<Vec4>,
    b: SampledCurve<Vec4>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantReport {
    /// `sup |<c', c'>| / |c'|^2`.
    pub lightlike: f64,
    /// `min c0'`.
    pub min_time_rate: f64,
    /// Largest deviation of `{a, b}` from orthonormal.
    pub orthonormal: f64,
    /// `sup max(|<c', a>|, |<c', b>|) / |c'|`.
    pub normality: f64,
}

impl InvariantReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.lightlike <= tol && self.min_time_rate > 0.0 && self.orthonormal <= tol && self.normality <= tol
    }
}

impl BjorlingData {
    /// Validates that `c` is lightlike and future directed and that `{a, b}`
    /// is orthonormal spacelike. Normality of `D` to `c'` is measured by
    /// [`check_necessary`] and [`BjorlingData::invariant_report`] rather than
    /// enforced here.
    pub fn new(c: SampledCurve<Vec4>, a: SampledCurve<Vec4>, b: SampledCurve<Vec4>) -> Result<Self> {
        if !(c.axis.same_as(&a.axis) && c.axis.same_as(&b.axis)) {
            return Err(Error::BadData("c, a and b must share one parameter axis".into()));
        }
        if c.len() < 7 {
            return Err(Error::BadData(format!("need at least 7 samples, got {}", c.len())));
        }
        let d = Self { c, a, b };
        let r = d.invariant_report();
        if !(r.lightlike <= tol::DATA) {
            return Err(Error::BadData(format!("c is not lightlike: sup |<c',c'>|/|c'|^2 = {:e}", r.lightlike)));
        }
        if !(r.min_time_rate > 0.0) {
            return Err(Error::BadData(format!("c0' must be positive, min is {}", r.min_time_rate)));
        }
        if !(r.orthonormal <= tol::DATA) {
            return Err(Error::BadData(format!("a, b are not orthonormal: deviation {:e}", r.orthonormal)));
        }
        Ok(d)
    }

    pub fn c(&self) -> &SampledCurve<Vec4> {
        &self.c
    }

    pub fn a(&self) -> &SampledCurve<Vec4> {
        &self.a
    }

    pub fn b(&self) -> &SampledCurve<Vec4> {
        &self.b
    }

    pub fn axis(&self) -> Axis {
        self.c.axis
    }

    pub fn velocity(&self) -> SampledCurve<Vec4> {
        curve_derivative(&self.c, 1)
    }

    pub fn invariant_report(&self) -> InvariantReport {
        let dc = self.velocity();
        let mut r = InvariantReport { lightlike: 0.0, min_time_rate: f64::INFINITY, orthonormal: 0.0, normality: 0.0 };
        for k in 0..self.c.len() {
            let (v, a, b) = (dc.points[k], self.a.points[k], self.b.points[k]);
            let scale = v.euclid_norm();
            r.lightlike = r.lightlike.max(v.inner(v).abs() / (scale * scale));
            r.min_time_rate = r.min_time_rate.min(v.x0);
            r.orthonormal = r.orthonormal.max((a.inner(a) - 1.0).abs()).max((b.inner(b) - 1.0).abs()).max(a.inner(b).abs());
            r.normality = r.normality.max(v.inner(a).abs().max(v.inner(b).abs()) / scale);
        }
        r
    }

    /// Same data with `a` and `b` swapped.
    pub fn swapped(&self) -> Self {
        Self { c: self.c.clone(), a: self.b.clone(), b: self.a.clone() }
    }

    fn frames(&self, orientation: Orientation) -> Result<Vec<MinkowskiFrame>> {
        (0..self.c.len())
            .map(|k| {
                let (a, b) = (self.a.points[k], self.b.points[k]);
                let (a, b) = match orientation {
                    Orientation::AB => (a, b),
                    Orientation::BA => (b, a),
                };
                build_frame_tol(a, b, tol::DATA).map_err(|e| Error::BadData(format!("frame at node {k}: {e}")))
            })
            .collect()
    }

    /// Data along a lightlike curve `c` whose normal plane is the orthogonal
    /// complement of `span{c', d0 + n3}`: `a = ((1 + cos) d0 + n0 + n3)/sin`,
    /// `b = n0 x n3 / sin`, ordered so that the necessary condition holds.
    pub fn from_null_generators(c: SampledCurve<Vec4>, n3: &SampledCurve<Vec4>) -> Result<Self> {
        if !c.axis.same_as(&n3.axis) {
            return Err(Error::BadData("c and n3 must share one parameter axis".into()));
        }
        let dc = curve_derivative(&c, 1);
        let mut a = Vec::with_capacity(c.len());
        let mut b = Vec::with_capacity(c.len());
        for k in 0..c.len() {
            let n0 = (dc.points[k] / dc.points[k].x0).spatial();
            let n0 = n0 / n0.norm3();
            let m = n3.points[k].spatial();
            let cos = n0.dot3(m);
            let sin = (1.0 - cos * cos).max(0.0).sqrt();
            if sin <= tol::ANGLE {
                return Err(Error::BadData(format!("n0 and n3 are parallel at node {k}")));
            }
            a.push((Vec4::basis(0) * (1.0 + cos) + n0 + m) / sin);
            b.push(n0.cross3(m) / sin);
        }
        let a = SampledCurve::new(c.axis, a)?;
        let b = SampledCurve::new(c.axis, b)?;
        let d = Self::new(c, a, b)?;
        let r = check_necessary(&d)?;
        Ok(if r.orientation == Some(Orientation::BA) { d.swapped() } else { d })
    }
}

/// The Cauchy data a lift carries along its `v = v_j` row: the curve
/// `u -> f(u, v_j)` and the normal frame `(etilde, e2)` there.
pub fn extract_data(s: &LiftSurface, j: usize) -> Result<BjorlingData> {
    if j >= s.grid.nv() {
        return Err(Error::BadInput(format!("row {j} outside {} rows", s.grid.nv())));
    }
    let frame = normal_frame(s)?;
    if frame.etilde.degenerate.iter().any(|&(_, jj)| jj == j) {
        return Err(Error::DegenerateAngle { count: frame.etilde.degenerate.len() });
    }
    let d = BjorlingData::new(s.grid.column(j), frame.etilde.values.column(j), frame.e2.values.column(j))?;
    let r = check_necessary(&d)?;
    Ok(if r.orientation == Some(Orientation::BA) { d.swapped() } else { d })
}

/// Which ordering of `{a, b}` orients the frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    AB,
    BA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NecessaryReport {
    /// `sup |c'/c0' - (d0 + n0)|` with the frame of `(a, b)`.
    pub residual_ab: f64,
    /// The same with the frame of `(b, a)`.
    pub residual_ba: f64,
    /// The admissible ordering, if either passes.
    pub orientation: Option<Orientation>,
    pub tol: f64,
}

impl NecessaryReport {
    pub fn pass(&self) -> bool {
        self.orientation.is_some()
    }

    pub fn residual(&self) -> f64 {
        self.residual_ab.min(self.residual_ba)
    }
}

pub fn check_necessary(d: &BjorlingData) -> Result<NecessaryReport> {
    check_necessary_with(d, tol::NECESSARY)
}

/// Measures `c' = c0'(d0 + n0)` for both orderings of `{a, b}`.
pub fn check_necessary_with(d: &BjorlingData, tol: f64) -> Result<NecessaryReport> {
    let dc = d.velocity();
    let residual = |o: Orientation| -> Result<f64> {
        let frames = d.frames(o)?;
        Ok(frames.iter().zip(&dc.points).fold(0.0, |m, (f, v)| m.max((*v / v.x0 - f.l0()).euclid_norm())))
    };
    let (residual_ab, residual_ba) = (residual(Orientation::AB)?, residual(Orientation::BA)?);
    let orientation = if residual_ab <= tol && residual_ab <= residual_ba {
        Some(Orientation::AB)
    } else if residual_ba <= tol {
        Some(Orientation::BA)
    } else {
        None
    };
    Ok(NecessaryReport { residual_ab, residual_ba, orientation, tol })
}

/// Curve-level quantities in the parameter `u = c0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDecomposition {
    pub orientation: Orientation,
    /// The data resampled so that `c0(u) = u`.
    pub data: BjorlingData,
    /// `alpha(u) = c(u) - u d0`.
    pub alpha: SampledCurve<Vec4>,
    pub frenet: FrenetData,
    pub n0: SphereCurve,
    pub n3: SphereCurve,
    pub theta: Vec<f64>,
    /// `<n3, N>`, absent where the Frenet frame degenerates.
    pub p: Vec<Option<f64>>,
    /// `<n3, B>`.
    pub q: Vec<Option<f64>>,
}

impl CurveDecomposition {
    pub fn axis(&self) -> Axis {
        self.alpha.axis
    }

    /// `sup |p^2 + q^2 - sin^2 theta|` over nodes with a Frenet frame.
    pub fn pq_residual(&self) -> f64 {
        (0..self.theta.len())
            .filter_map(|k| Some((self.p[k]?, self.q[k]?, self.theta[k])))
            .fold(0.0, |m, (p, q, th)| m.max((p * p + q * q - th.sin().powi(2)).abs()))
    }

    /// `sup |n3 - (cos theta T + p N + q B)|` over nodes with a Frenet frame.
    pub fn frame_residual(&self) -> f64 {
        (0..self.theta.len())
            .filter_map(|k| {
                let f = &self.frenet;
                Some((k, f.normal[k]?, f.binormal[k]?, self.p[k]?, self.q[k]?))
            })
            .fold(0.0, |m, (k, nrm, bin, p, q)| {
                let rebuilt = self.frenet.tangent[k] * self.theta[k].cos() + nrm * p + bin * q;
                m.max(rebuilt.max_abs_diff(self.n3.points()[k]))
            })
    }

    pub fn degenerate_nodes(&self) -> usize {
        self.frenet.degenerate_nodes().len()
    }
}

fn reorthonormalize(a: Vec4, b: Vec4) -> (Vec4, Vec4) {
    let a = a / a.norm_sq().sqrt();
    let b = b - a * a.inner(b);
    (a, b / b.norm_sq().sqrt())
}

/// Resamples the data on a uniform axis in `u = c0`, using Newton's method on
/// the local interpolant of `c0` to find the original parameter of each node.
/// The pair `{a, b}` comes back orthonormal to rounding.
pub fn reparametrize(d: &BjorlingData) -> Result<BjorlingData> {
    let c0 = d.c.map(|p| p.x0);
    let ax = d.axis();
    let already = c0.points.iter().enumerate().all(|(k, &x)| (x - ax.at(k)).abs() <= 1e-12 * ax.step.max(1.0));
    if already {
        let pairs: Vec<(Vec4, Vec4)> = (0..ax.n).map(|k| reorthonormalize(d.a.points[k], d.b.points[k])).collect();
        let a = SampledCurve::new(ax, pairs.iter().map(|p| p.0).collect())?;
        let b = SampledCurve::new(ax, pairs.iter().map(|p| p.1).collect())?;
        return BjorlingData::new(d.c.clone(), a, b);
    }
    let rate = curve_derivative(&c0, 1);
    let (lo, hi) = (c0.points[0], c0.points[c0.len() - 1]);
    let uax = Axis::linspace(lo, hi, ax.n)?;
    let mut params = Vec::with_capacity(ax.n);
    for k in 0..ax.n {
        let target = uax.at(k);
        let mut t = ax.min + (target - lo) / (hi - lo) * (ax.max() - ax.min);
        for _ in 0..50 {
            let r = interpolate_curve(&c0, t, RESAMPLE_WIDTH) - target;
            let dt = r / interpolate_curve(&rate, t, RESAMPLE_WIDTH);
            t = (t - dt).clamp(ax.min, ax.max());
            if dt.abs() <= 1e-15 * ax.step.max(1.0) {
                break;
            }
        }
        params.push(t);
    }
    let at = |curve: &SampledCurve<Vec4>, k: usize| interpolate_curve(curve, params[k], RESAMPLE_WIDTH);
    let c = SampledCurve::from_fn(uax, |u| {
        let p = at(&d.c, uax.nearest(u));
        Vec4::new(u, p.x1, p.x2, p.x3)
    });
    let pairs: Vec<(Vec4, Vec4)> = (0..ax.n).map(|k| reorthonormalize(at(&d.a, k), at(&d.b, k))).collect();
    let a = SampledCurve::new(uax, pairs.iter().map(|p| p.0).collect())?;
    let b = SampledCurve::new(uax, pairs.iter().map(|p| p.1).collect())?;
    BjorlingData::new(c, a, b)
}

/// Curve-level decomposition that tolerates degenerate Frenet nodes.
pub fn curve_data(d: &BjorlingData) -> Result<CurveDecomposition> {
    let report = check_necessary(d)?;
    let orientation = report.orientation.ok_or(Error::NecessaryConditionFailed { residual: report.residual() })?;
    let data = reparametrize(d)?;
    let frames = data.frames(orientation)?;
    let alpha = data.c.map(|p| p.spatial());
    let frenet = frenet(&alpha)?;
    let ax = data.axis();
    let n0 = SphereCurve::new(SampledCurve::new(ax, frames.iter().map(|f| f.n0).collect())?)?;
    let n3 = SphereCurve::new(SampledCurve::new(ax, frames.iter().map(|f| f.n3).collect())?)?;
    let theta: Vec<f64> = frames.iter().map(|f| f.theta).collect();
    let p = (0..ax.n).map(|k| frenet.normal[k].map(|nrm| nrm.dot3(frames[k].n3))).collect();
    let q = (0..ax.n).map(|k| frenet.binormal[k].map(|bin| bin.dot3(frames[k].n3))).collect();
    Ok(CurveDecomposition { orientation, data, alpha, frenet, n0, n3, theta, p, q })
}

/// Like [`curve_data`], but fails where `kappa` vanishes.
pub fn decompose(d: &BjorlingData) -> Result<CurveDecomposition> {
    let dec = curve_data(d)?;
    match dec.degenerate_nodes() {
        0 => Ok(dec),
        count => Err(Error::DegenerateFrenet { count }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatibilityReport {
    /// `sup |theta_u sin theta + kappa p|`.
    pub angle: f64,
    /// `sup |p_u + kappa cos theta - tor q|`.
    pub normal: f64,
    /// `sup |q_u + tor p|`.
    pub binormal: f64,
    /// `sup |dn3/du|`.
    pub drift: f64,
    /// Nodes skipped because the Frenet frame degenerates there.
    pub skipped: usize,
    pub tol: f64,
}

impl CompatibilityReport {
    pub fn pass(&self) -> bool {
        self.drift <= self.tol
    }
}

/// Residuals of the compatibility system along the curve, which together say
/// that `n3` does not move with `u`.
pub fn compatibility_residual(dec: &CurveDecomposition) -> CompatibilityReport {
    let ax = dec.axis();
    let n3 = dec.n3.curve.clone();
    let drift = curve_derivative(&n3, 1).points.iter().fold(0.0, |m: f64, v| m.max(v.euclid_norm()));
    let cos = SampledCurve::from_fn(ax, |u| dec.theta[ax.nearest(u)].cos());
    let dcos = curve_derivative(&cos, 1).points;
    let mut r = CompatibilityReport { angle: 0.0, normal: 0.0, binormal: 0.0, drift, skipped: 0, tol: tol::COMPATIBILITY };
    if dec.degenerate_nodes() > 0 {
        r.skipped = dec.degenerate_nodes();
        if dec.frenet.is_degenerate_everywhere() {
            return r;
        }
    }
    // p and q are differentiated only where the whole stencil has a frame
    let full = dec.degenerate_nodes() == 0;
    let p = SampledCurve::from_fn(ax, |u| dec.p[ax.nearest(u)].unwrap_or(0.0));
    let q = SampledCurve::from_fn(ax, |u| dec.q[ax.nearest(u)].unwrap_or(0.0));
    let (dp, dq) = (curve_derivative(&p, 1).points, curve_derivative(&q, 1).points);
    for k in 0..ax.n {
        let (Some(pk), Some(qk), Some(tor)) = (dec.p[k], dec.q[k], dec.frenet.torsion[k]) else {
            continue;
        };
        let kappa = dec.frenet.kappa[k];
        r.angle = r.angle.max((-dcos[k] + kappa * pk).abs());
        if full {
            r.normal = r.normal.max((dp[k] + kappa * dec.theta[k].cos() - tor * qk).abs());
            r.binormal = r.binormal.max((dq[k] + tor * pk).abs());
        }
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpecialKind {
    Generic,
    PlanarAlpha,
    LightlikeLine,
    Helix,
}

impl SpecialKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Generic => "Generic",
            Self::PlanarAlpha => "PlanarAlpha",
            Self::LightlikeLine => "LightlikeLine",
            Self::Helix => "Helix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialCase {
    pub kind: SpecialKind,
    pub sup_kappa: f64,
    pub sup_tor: f64,
    pub sup_theta_u: f64,
    pub sup_p: f64,
    /// `max - min` of `kappa / tor`.
    pub ratio_spread: f64,
    pub tol: f64,
}

/// Checks, in order: `kappa = 0` (lightlike line), `tor = 0` (planar
/// `alpha`), then `theta_u = 0`, `p = 0` and constant `kappa/tor` (helix).
pub fn classify_special(d: &BjorlingData) -> Result<SpecialCase> {
    classify_special_with(d, tol::CLASSIFY)
}

pub fn classify_special_with(d: &BjorlingData, tol: f64) -> Result<SpecialCase> {
    let dec = curve_data(d)?;
    let f = &dec.frenet;
    let sup = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0, |m: f64, x| m.max(x.abs()));
    let sup_kappa = sup(&mut f.kappa.iter().copied());
    let sup_tor = sup(&mut f.torsion.iter().flatten().copied());
    let sup_p = sup(&mut dec.p.iter().flatten().copied());
    let ax = dec.axis();
    let cos = SampledCurve::from_fn(ax, |u| dec.theta[ax.nearest(u)].cos());
    let theta_u = curve_derivative(&cos, 1)
        .points
        .iter()
        .zip(&dec.theta)
        .map(|(dc, th)| -dc / th.sin())
        .collect::<Vec<_>>();
    let sup_theta_u = sup(&mut theta_u.into_iter());
    let ratios: Vec<f64> = f
        .kappa
        .iter()
        .zip(&f.torsion)
        .filter_map(|(k, t)| t.filter(|t| t.abs() > tol).map(|t| k / t))
        .collect();
    let ratio_spread = if ratios.is_empty() {
        f64::INFINITY
    } else {
        ratios.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x)) - ratios.iter().fold(f64::INFINITY, |m, &x| m.min(x))
    };
    let kind = if sup_kappa <= tol {
        SpecialKind::LightlikeLine
    } else if sup_tor <= tol {
        SpecialKind::PlanarAlpha
    } else if sup_theta_u <= tol && sup_p <= tol && ratio_spread <= tol {
        SpecialKind::Helix
    } else {
        SpecialKind::Generic
    };
    Ok(SpecialCase { kind, sup_kappa, sup_tor, sup_theta_u, sup_p, ratio_spread, tol })
}

/// Embeds Cauchy data of R^3_1 into R^4_1: `c = (gamma, 0)`, `a = (n, 0)`,
/// `b = d3`.
pub fn reduce_from_l3(gamma: &SampledCurve<[f64; 3]>, n: &SampledCurve<[f64; 3]>) -> Result<BjorlingData> {
    if !gamma.axis.same_as(&n.axis) {
        return Err(Error::BadData("gamma and n must share one parameter axis".into()));
    }
    let l3 = |x: [f64; 3], y: [f64; 3]| -x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let dg = curve_derivative(gamma, 1);
    for k in 0..gamma.len() {
        let (v, m) = (dg.points[k], n.points[k]);
        let scale = v.iter().map(|x| x * x).sum::<f64>();
        if l3(v, v).abs() > tol::DATA * scale {
            return Err(Error::BadData(format!("gamma is not lightlike at node {k}")));
        }
        if (l3(m, m) - 1.0).abs() > tol::DATA {
            return Err(Error::BadData(format!("n is not unit spacelike at node {k}")));
        }
        if l3(m, v).abs() > tol::DATA * scale.sqrt() {
            return Err(Error::BadData(format!("n is not normal to gamma' at node {k}")));
        }
    }
    let embed = |x: [f64; 3]| Vec4::new(x[0], x[1], x[2], 0.0);
    BjorlingData::new(gamma.map(embed), n.map(embed), SampledCurve::from_fn(gamma.axis, |_| Vec4::basis(3)))
}
