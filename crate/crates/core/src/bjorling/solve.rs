use serde::Serialize;

use super::{
    check_necessary, classify_special, compatibility_residual, curve_data, CompatibilityReport, CurveDecomposition,
    NecessaryReport, Orientation, SpecialKind, BjorlingData,
};
use crate::chebnet::SphereCurve;
use crate::error::{Error, Result};
use crate::lift::{build_minimal, mean_curvature, normal_frame, LiftSurface};
use crate::minkowski::{plane_projector, projector_distance, Vec4};
use crate::numerics::{partials, Axis, Grid2D, Partial, SampledCurve};
use crate::tol;

/// How the second generator is continued off the curve.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtensionChoice {
    /// `n3(v)` given outright; its value at `v = 0` must match the data.
    Curve(SphereCurve),
    /// An angle `theta(u, v)` over the curve axis times `J`, turned into
    /// `n3 = cos theta T + p N + q B` with `p`, `q` from [`solve_pq`].
    ThetaProfile(Grid2D<f64>),
    /// `n3(v) = cos v n3(0) + sin v e2(0)` over `J`, cut short before it
    /// comes within [`tol::EXTENSION_MARGIN`] of `+-n0`.
    Default { j: Axis },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PqSolution {
    pub p: Grid2D<f64>,
    pub q: Grid2D<f64>,
    /// `p^2 + q^2 - sin^2 theta`.
    pub residual: Grid2D<f64>,
}

/// `p = -theta_u sin theta / kappa`, `q = (p_u + kappa cos theta) / tor`,
/// with `kappa` and `tor` given along the `u` axis of `theta`.
pub fn solve_pq(theta: &Grid2D<f64>, kappa: &[f64], tor: &[f64]) -> Result<PqSolution> {
    if kappa.len() != theta.nu() || tor.len() != theta.nu() {
        return Err(Error::BadInput("kappa and tor must have one value per u node".into()));
    }
    let small_kappa = kappa.iter().filter(|k| k.abs() <= tol::KAPPA).count();
    if small_kappa > 0 {
        return Err(Error::DivisionDegenerate { what: "curvature", count: small_kappa });
    }
    let small_tor = tor.iter().filter(|t| t.abs() <= tol::KAPPA).count();
    if small_tor > 0 {
        return Err(Error::DivisionDegenerate { what: "torsion", count: small_tor });
    }
    let cos = theta.map(f64::cos);
    // -theta_u sin theta = (cos theta)_u
    let p = partials(&cos, Partial::U).map_indexed(|i, _, d| d / kappa[i]);
    let pu = partials(&p, Partial::U);
    let q = pu.map_indexed(|i, j, d| (d + kappa[i] * cos.get(i, j)) / tor[i]);
    let residual = p.map_indexed(|i, j, pv| pv * pv + q.get(i, j).powi(2) - theta.get(i, j).sin().powi(2));
    Ok(PqSolution { p, q, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub necessary: NecessaryReport,
    pub compatibility: CompatibilityReport,
    /// `sup |f(u, 0) - c(u)|`.
    pub curve_match: f64,
    /// Largest difference of the projectors onto the computed normal plane and
    /// onto `D` along `v = 0`.
    pub normal_bundle: f64,
    /// `sup |H_f|`.
    pub sup_h: f64,
    pub curve_tol: f64,
    pub bundle_tol: f64,
    pub minimality_tol: f64,
    /// The `v` axis actually used.
    pub j: Axis,
}

impl SolveReport {
    pub fn pass(&self) -> bool {
        self.necessary.pass()
            && self.compatibility.pass()
            && self.curve_match <= self.curve_tol
            && self.normal_bundle <= self.bundle_tol
            && self.sup_h <= self.minimality_tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub surface: LiftSurface,
    pub n0: SphereCurve,
    pub n3: SphereCurve,
    pub orientation: Orientation,
    pub report: SolveReport,
}

fn zero_node(j: &Axis) -> Result<usize> {
    let jb = j.base();
    if j.at(jb).abs() > 1e-9 * j.step {
        return Err(Error::BadInput(format!("the v axis must have a node at 0, nearest is {}", j.at(jb))));
    }
    Ok(jb)
}

struct Prepared {
    necessary: NecessaryReport,
    dec: CurveDecomposition,
    compatibility: CompatibilityReport,
}

fn prepare(d: &BjorlingData) -> Result<Prepared> {
    let necessary = check_necessary(d)?;
    if !necessary.pass() {
        return Err(Error::NecessaryConditionFailed { residual: necessary.residual() });
    }
    let dec = curve_data(d)?;
    let compatibility = compatibility_residual(&dec);
    if !compatibility.pass() {
        return Err(Error::IncompatibleData { drift: compatibility.drift });
    }
    Ok(Prepared { necessary, dec, compatibility })
}

/// Value of `n3` on the curve at the node nearest `u = 0`.
fn seed(dec: &CurveDecomposition) -> Vec4 {
    dec.n3.points()[dec.axis().base()]
}

fn assemble(prep: Prepared, n3: SphereCurve) -> Result<Solution> {
    let Prepared { necessary, dec, compatibility } = prep;
    let j = n3.axis();
    let jb = zero_node(&j)?;
    let ax = dec.axis();
    let ib = ax.base();
    let p0 = dec.data.c().points[ib] - Vec4::basis(0) * ax.at(ib);
    let surface = build_minimal(&dec.n0, &n3, p0)?;

    let curve_match = (0..ax.n).fold(0.0, |m: f64, i| {
        m.max((surface.grid.get(i, jb) - dec.data.c().points[i]).euclid_norm())
    });
    let frame = normal_frame(&surface)?;
    let mut normal_bundle = 0.0f64;
    for i in 0..ax.n {
        let computed = plane_projector(frame.etilde.values.get(i, jb), frame.e2.values.get(i, jb))?;
        let given = plane_projector(dec.data.a().points[i], dec.data.b().points[i])?;
        normal_bundle = normal_bundle.max(projector_distance(&computed, &given));
    }
    let sup_h = mean_curvature(&surface)?.sup_norm(false);
    let report = SolveReport {
        necessary,
        compatibility,
        curve_match,
        normal_bundle,
        sup_h,
        curve_tol: tol::CURVE_MATCH,
        bundle_tol: tol::NORMAL_BUNDLE,
        minimality_tol: tol::MINIMALITY,
        j,
    };
    Ok(Solution { surface, n0: dec.n0, n3, orientation: dec.orientation, report })
}

fn check_seed(curve: &SphereCurve, seed: Vec4) -> Result<f64> {
    let jb = zero_node(&curve.axis())?;
    Ok(curve.points()[jb].max_abs_diff(seed))
}

fn from_theta_profile(dec: &CurveDecomposition, theta: &Grid2D<f64>) -> Result<SphereCurve> {
    let ax = dec.axis();
    if !theta.u.same_as(&ax) {
        return Err(Error::BadInput("theta profile must use the curve's u axis".into()));
    }
    let jb = zero_node(&theta.v)?;
    let deviation = (0..ax.n).fold(0.0, |m: f64, i| m.max((theta.get(i, jb) - dec.theta[i]).abs()));
    if deviation > tol::SEED {
        return Err(Error::ExtensionMismatch { deviation });
    }
    let f = &dec.frenet;
    if dec.degenerate_nodes() > 0 {
        return Err(Error::DegenerateFrenet { count: dec.degenerate_nodes() });
    }
    let tor: Vec<f64> = f.torsion.iter().map(|t| t.unwrap_or(0.0)).collect();
    let pq = solve_pq(theta, &f.kappa, &tor)?;
    let n3 = theta.map_indexed(|i, j, th| {
        let (nrm, bin) = (f.normal[i].unwrap_or(Vec4::ZERO), f.binormal[i].unwrap_or(Vec4::ZERO));
        f.tangent[i] * th.cos() + nrm * pq.p.get(i, j) + bin * pq.q.get(i, j)
    });
    let ib = ax.base();
    let drift = n3.iter().fold(0.0, |m: f64, (_, j, x)| m.max((x - n3.get(ib, j)).euclid_norm()));
    if drift > tol::COMPATIBILITY {
        return Err(Error::IncompatibleData { drift });
    }
    SphereCurve::normalized(theta.v, |v| n3.get(ib, theta.v.nearest(v)))
}

fn default_extension(dec: &CurveDecomposition, j: Axis) -> Result<SphereCurve> {
    let start = seed(dec);
    let n0 = dec.n0.points()[dec.axis().base()];
    let side = n0.cross3(start);
    let side = side / side.norm3();
    let at = |v: f64| start * v.cos() + side * v.sin();
    let clear = |v: f64| {
        let m = at(v);
        dec.n0.points().iter().all(|p| (*p - m).norm3().min((*p + m).norm3()) > tol::EXTENSION_MARGIN)
    };
    let jb = zero_node(&j)?;
    let mut lo = jb;
    while lo > 0 && clear(j.at(lo - 1)) {
        lo -= 1;
    }
    let mut hi = jb;
    while hi + 1 < j.n && clear(j.at(hi + 1)) {
        hi += 1;
    }
    if hi - lo + 1 < 7 {
        return Err(Error::BadData("default extension leaves fewer than 7 nodes before meeting +-n0".into()));
    }
    let cut = Axis::new(j.at(lo), j.step, hi - lo + 1)?;
    SphereCurve::normalized(cut, at)
}

/// Solves the Cauchy problem for `d` with the chosen continuation of the
/// second generator, and verifies the result.
pub fn solve(d: &BjorlingData, ext: &ExtensionChoice) -> Result<Solution> {
    let prep = prepare(d)?;
    let n3 = match ext {
        ExtensionChoice::Curve(curve) => {
            let deviation = check_seed(curve, seed(&prep.dec))?;
            if deviation > tol::SEED {
                return Err(Error::ExtensionMismatch { deviation });
            }
            curve.clone()
        }
        ExtensionChoice::ThetaProfile(theta) => from_theta_profile(&prep.dec, theta)?,
        ExtensionChoice::Default { j } => default_extension(&prep.dec, *j)?,
    };
    assemble(prep, n3)
}

/// The ruled solution `f(u, v) = c(0) + u l0 + v d0 + int_0^v n3` for data
/// along a lightlike line.
pub fn ruled_solution(d: &BjorlingData, n3: &SphereCurve) -> Result<Solution> {
    let case = classify_special(d)?;
    if case.kind != SpecialKind::LightlikeLine {
        return Err(Error::WrongCase { expected: "LightlikeLine", found: case.kind.as_str().into() });
    }
    let prep = prepare(d)?;
    let deviation = check_seed(n3, seed(&prep.dec))?;
    if deviation > tol::SEED {
        return Err(Error::InconsistentSeed { deviation });
    }
    assemble(prep, n3.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonuniquenessReport {
    /// `sup |f1 - f2|` along `v = 0`.
    pub on_curve: f64,
    /// `sup |f1 - f2|` over nodes with `|v| >= away`.
    pub divergence: f64,
    pub away: f64,
    pub first: SolveReport,
    pub second: SolveReport,
}

impl NonuniquenessReport {
    pub fn pass(&self, min_divergence: f64) -> bool {
        self.first.pass() && self.second.pass() && self.on_curve <= tol::CURVE_MATCH && self.divergence >= min_divergence
    }
}

/// Solves with two extensions that share the seed and compares the results.
/// Both must produce the same `v` axis.
pub fn nonuniqueness(
    d: &BjorlingData,
    first: &ExtensionChoice,
    second: &ExtensionChoice,
    away: f64,
) -> Result<(Solution, Solution, NonuniquenessReport)> {
    let s1 = solve(d, first)?;
    let s2 = solve(d, second)?;
    let (g1, g2) = (&s1.surface.grid, &s2.surface.grid);
    if !g1.same_shape(g2) || !g1.v.same_as(&g2.v) {
        return Err(Error::BadInput("the two extensions must share one v axis".into()));
    }
    let jb = zero_node(&g1.v)?;
    let mut on_curve = 0.0f64;
    let mut divergence = 0.0f64;
    for (i, j, x) in g1.iter() {
        let dist = (x - g2.get(i, j)).euclid_norm();
        if j == jb {
            on_curve = on_curve.max(dist);
        }
        if g1.v.at(j).abs() >= away {
            divergence = divergence.max(dist);
        }
    }
    let report = NonuniquenessReport { on_curve, divergence, away, first: s1.report.clone(), second: s2.report.clone() };
    Ok((s1, s2, report))
}

/// A curve `n3(v)` for a sampled closed form, for building extensions.
pub fn extension_curve(j: Axis, f: impl Fn(f64) -> Vec4) -> Result<SphereCurve> {
    SphereCurve::new(SampledCurve::from_fn(j, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_angle_gives_zero_p() {
        let u = Axis::linspace(0.0, 1.0, 11).unwrap();
        let v = Axis::linspace(-0.5, 0.5, 11).unwrap();
        let theta = Grid2D::from_fn(u, v, |_, _| 0.7).unwrap();
        let kappa = vec![0.5; 11];
        let tor = vec![0.25; 11];
        let s = solve_pq(&theta, &kappa, &tor).unwrap();
        assert!(s.p.sup_abs(false) < 1e-12);
        let dev = s.q.map(|q| q - 2.0 * 0.7f64.cos()).sup_abs(false);
        assert!(dev < 1e-10, "{dev}");
        let flat = vec![0.0; 11];
        assert!(matches!(solve_pq(&theta, &kappa, &flat), Err(Error::DivisionDegenerate { what: "torsion", .. })));
    }
}
