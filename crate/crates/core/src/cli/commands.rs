use super::export::{fields_csv, grid_csv};
use super::report::Checker;
use super::spec::{DataSpec, Expectation, ExtensionSpec, LiftSpec, NetSpec, NonuniqueSpec, SpecDoc};
use crate::bjorling::{
    check_necessary_with, classify_special, compatibility_residual, curve_data, nonuniqueness, ruled_solution, solve,
    BjorlingData, ExtensionChoice, Solution, SolveReport,
};
use crate::chebnet::gallery::critical;
use crate::chebnet::{
    build_first_kind, check_disjointness_with, check_sum_one, euclidean_shape, first_form, gallery,
    inverse_equivalent_immersion, is_chebyshev, sine_gordon_residual, ChebyshevReport, Gallery, GalleryName,
    NetSurface,
};
use crate::error::{Error, Result};
use crate::lift::{
    gaussian_curvature, h_parallel_e2, isothermal_form, lift_net, mean_curvature, verify_isothermal,
    verify_null_coords, CurvatureRoute, LiftSurface,
};
use crate::minkowski::Vec4;
use crate::numerics::{sup_and_l2, Grid2D};
use crate::tol;

/// Files produced by a command, as `(suffix, contents)`.
pub type Outputs = Vec<(String, String)>;

fn require<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| Error::BadInput(format!("spec document has no {what}")))
}

fn origin_index<T>(g: &Grid2D<T>) -> (usize, usize) {
    (g.u.base(), g.v.base())
}

fn field_error(g: &Grid2D<f64>, oracle: impl Fn(f64, f64) -> f64, interior: bool) -> (f64, f64) {
    let diff = g.map_indexed(|i, j, x| {
        if interior && !g.is_interior(i, j) {
            0.0
        } else {
            x - oracle(g.u.at(i), g.v.at(j))
        }
    });
    sup_and_l2(&diff)
}

fn chebyshev_checks(ck: &mut Checker, prefix: &str, r: &ChebyshevReport) {
    ck.headline(&format!("{prefix}sup_e_minus_1"), r.sup_e_dev, r.tol);
    ck.headline(&format!("{prefix}sup_g_minus_1"), r.sup_g_dev, r.tol);
    ck.at_most(&format!("{prefix}sup_abs_f"), r.sup_f, 1.0 - r.margin);
}

fn build_net(spec: &NetSpec, ck: &mut Checker) -> Result<(NetSurface, Option<Gallery>)> {
    match (&spec.gallery, &spec.t1, &spec.t2) {
        (Some(name), None, None) => {
            ck.info("gallery", name.as_str());
            let g = gallery(*name, spec.n)?;
            Ok((g.net.clone(), Some(g)))
        }
        (None, Some(t1), Some(t2)) => {
            let (t1, t2) = (t1.to_sphere()?, t2.to_sphere()?);
            let margin = ck.resolve("disjointness_separation", tol::DISJOINT_MARGIN);
            let d = check_disjointness_with(&t1, &t2, margin);
            ck.at_least("disjointness_separation", d.min_separation, margin);
            ck.info("disjointness", d);
            d.into_result()?;
            Ok((build_first_kind(&t1, &t2, Vec4::from_array(spec.origin))?, None))
        }
        _ => Err(Error::BadInput("[net] needs either `gallery` or both `t1` and `t2`".into())),
    }
}

fn critical_oracles(ck: &mut Checker, net: &NetSurface) -> Result<()> {
    let ff = first_form(&net.grid);
    ck.at_most_l2("oracle_f", field_error(&ff.f, critical::f, false), 1e-8);
    let shape = euclidean_shape(net)?;
    let gauss = shape.gauss_map.iter().fold(0.0f64, |m, (i, j, n)| {
        m.max(n.max_abs_diff(critical::gauss_map(net.grid.u.at(i), net.grid.v.at(j))))
    });
    ck.at_most("oracle_gauss_map", gauss, 1e-4);
    let second = [
        field_error(&shape.l, |u, v| critical::second_form(u, v).0, true).0,
        field_error(&shape.m, |u, v| critical::second_form(u, v).1, true).0,
        field_error(&shape.n, |u, v| critical::second_form(u, v).2, true).0,
    ];
    ck.at_most("oracle_second_form", second.into_iter().fold(0.0, f64::max), 1e-4);
    ck.at_most_l2("oracle_k_t", field_error(&shape.k_t, critical::gaussian_curvature, false), 1e-3);
    let (i, j) = origin_index(&shape.k_t);
    ck.at_most("oracle_k_t_origin", (shape.k_t.get(i, j) - 1.0).abs(), 1e-4);
    Ok(())
}

fn noncritical_oracles(ck: &mut Checker, g: &Gallery) -> Result<()> {
    let ts = require(&g.ts_grid, "(t, s) grid")?;
    let sum = check_sum_one(ts, ck.resolve("sum_one", 1e-8));
    ck.at_most("sum_one", sum.sup_sum_dev, sum.tol);
    ck.at_most("ts_sup_abs_f", sum.sup_f, 1e-9);
    let resampled = inverse_equivalent_immersion(ts, g.net.grid.nu())?;
    chebyshev_checks(ck, "resampled_", &is_chebyshev(&resampled, tol::CHEBYSHEV));
    Ok(())
}

/// The net and its verdicts, shared by `net` and `lift`.
fn net_stage(spec: &NetSpec, ck: &mut Checker) -> Result<NetSurface> {
    let (net, gal) = build_net(spec, ck)?;
    ck.grid(&net.grid);
    chebyshev_checks(ck, "", &is_chebyshev(&net.grid, tol::CHEBYSHEV));
    let shape = euclidean_shape(&net)?;
    ck.at_most_l2("sine_gordon", sup_and_l2(&sine_gordon_residual(&net, &shape)), 1e-3);
    let (i, j) = origin_index(&shape.k_t);
    ck.info("k_t_origin", shape.k_t.get(i, j));
    ck.info("origin_node", (net.grid.u.at(i), net.grid.v.at(j)));
    match gal.as_ref().map(|g| g.name) {
        Some(GalleryName::Critical) => critical_oracles(ck, &net)?,
        Some(GalleryName::Noncritical) => noncritical_oracles(ck, gal.as_ref().expect("matched"))?,
        None => {}
    }
    Ok(net)
}

pub fn net(doc: &SpecDoc, ck: &mut Checker, out: &mut Outputs) -> Result<()> {
    let net = net_stage(require(&doc.net, "[net] table")?, ck)?;
    let shape = euclidean_shape(&net)?;
    let (u, v) = (net.grid.u, net.grid.v);
    out.push(("grid.csv".into(), grid_csv(&net.grid)));
    out.push(("theta.csv".into(), fields_csv(u, v, &["theta"], |i, j| vec![net.theta.get(i, j)])));
    out.push((
        "shape.csv".into(),
        fields_csv(u, v, &["n1", "n2", "n3", "l", "m", "n", "k_t"], |i, j| {
            let g = shape.gauss_map.get(i, j);
            vec![g.x1, g.x2, g.x3, shape.l.get(i, j), shape.m.get(i, j), shape.n.get(i, j), shape.k_t.get(i, j)]
        }),
    ));
    Ok(())
}

/// Which lift quantities to verify.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LiftFlags {
    pub curvature: bool,
    pub minimality: bool,
    pub isothermal: bool,
}

/// Source of the net for `lift`.
pub enum LiftInput<'a> {
    Spec(&'a SpecDoc),
    Grid(Grid2D<Vec4>),
}

pub fn lift(input: LiftInput, flags: LiftFlags, ck: &mut Checker, out: &mut Outputs) -> Result<()> {
    let default_spec = LiftSpec::default();
    let (net, spec, critical_source) = match input {
        LiftInput::Spec(doc) => {
            let net_spec = require(&doc.net, "[net] table")?;
            let net = net_stage(net_spec, ck)?;
            (net, doc.lift.clone().unwrap_or(default_spec), net_spec.gallery == Some(GalleryName::Critical))
        }
        LiftInput::Grid(g) => {
            let spatial = g.map(Vec4::spatial);
            let report = is_chebyshev(&spatial, tol::CHEBYSHEV);
            ck.grid(&spatial);
            chebyshev_checks(ck, "", &report);
            (NetSurface::from_grid(spatial, tol::CHEBYSHEV)?, default_spec, false)
        }
    };
    let flags = if flags == LiftFlags::default() { LiftFlags { minimality: true, ..flags } } else { flags };
    let s = lift_net(&net)?;
    ck.headline("null_coordinates", verify_null_coords(&s)?.max(), 1e-6);

    if flags.minimality {
        let sup_h = mean_curvature(&s)?.sup_norm(false);
        ck.info("max_mean_curvature", sup_h);
        ck.info("minimal", sup_h <= tol::MINIMALITY);
        match spec.expect {
            Expectation::Minimal => {
                ck.headline("sup_mean_curvature", sup_h, tol::MINIMALITY);
            }
            Expectation::Nonminimal => {
                ck.at_least("max_mean_curvature", sup_h, spec.min_mean_curvature);
                let par = h_parallel_e2(&s)?;
                ck.at_most("h_off_e2_line", par.sup_off_line, 1e-4);
            }
        }
    }
    if flags.curvature {
        curvature_stage(&s, critical_source, ck, out)?;
    }
    if flags.isothermal {
        let n = spec.isothermal_n.unwrap_or((net.grid.nu().min(net.grid.nv()) - 1) / 2 + 1);
        let iso = isothermal_form(&s, n)?;
        ck.at_most("isothermal_metric", verify_isothermal(&iso)?.max(), 1e-6);
        ck.info("isothermal_grid", super::report::GridInfo::from(&iso.grid));
        out.push(("isothermal_grid.csv".into(), grid_csv(&iso.grid)));
    }
    out.push(("grid.csv".into(), grid_csv(&s.grid)));
    Ok(())
}

fn curvature_stage(s: &LiftSurface, critical_source: bool, ck: &mut Checker, out: &mut Outputs) -> Result<()> {
    let direct = gaussian_curvature(s, CurvatureRoute::Direct)?;
    let via = gaussian_curvature(s, CurvatureRoute::ViaNet)?;
    let diff = direct.values.zip_map(&via.values, |a, b| a - b);
    ck.at_most_l2("curvature_routes", sup_and_l2(&diff), 1e-3);
    let (i, j) = origin_index(&direct.values);
    let (kd, kv) = (direct.values.get(i, j), via.values.get(i, j));
    ck.info("k_origin_direct", kd);
    ck.info("k_origin_via_net", kv);
    ck.info("curvature_degenerate_nodes", direct.degenerate.len().max(via.degenerate.len()));
    if critical_source {
        ck.at_most("oracle_k_origin_direct", (kd - 1.0).abs(), 1e-3);
        ck.at_most("oracle_k_origin_via_net", (kv - 1.0).abs(), 1e-3);
    }
    let (u, v) = (s.grid.u, s.grid.v);
    out.push((
        "curvature.csv".into(),
        fields_csv(u, v, &["k_direct", "k_via_net"], |i, j| vec![direct.values.get(i, j), via.values.get(i, j)]),
    ));
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Check,
    Solve,
    Nonunique,
}

fn data_stage(spec: &DataSpec, ck: &mut Checker) -> Result<BjorlingData> {
    let d = spec.resolve()?;
    ck.info("axis", d.axis());
    let inv = d.invariant_report();
    ck.at_most("data_lightlike", inv.lightlike, tol::DATA);
    ck.at_most("data_orthonormal", inv.orthonormal, tol::DATA);
    ck.at_most("data_normality", inv.normality, tol::DATA);
    ck.holds("data_future_directed", inv.min_time_rate > 0.0);
    Ok(d)
}

fn extension(spec: &ExtensionSpec, d: &BjorlingData) -> Result<Option<ExtensionChoice>> {
    Ok(Some(match spec {
        ExtensionSpec::Default { domain } => ExtensionChoice::Default { j: domain.axis()? },
        ExtensionSpec::Curve { curve } => ExtensionChoice::Curve(curve.to_sphere()?),
        ExtensionSpec::Theta { domain, value } => {
            let u = curve_data(d)?.axis();
            ExtensionChoice::ThetaProfile(Grid2D::from_fn(u, domain.axis()?, |_, _| *value)?)
        }
        ExtensionSpec::Ruled { .. } => return Ok(None),
    }))
}

fn solve_with(spec: &ExtensionSpec, d: &BjorlingData) -> Result<Solution> {
    match (spec, extension(spec, d)?) {
        (ExtensionSpec::Ruled { curve }, _) => ruled_solution(d, &curve.to_sphere()?),
        (_, Some(ext)) => solve(d, &ext),
        (_, None) => unreachable!("only ruled extensions have no choice"),
    }
}

fn solve_checks(ck: &mut Checker, prefix: &str, r: &SolveReport) {
    ck.at_most(&format!("{prefix}necessary_residual"), r.necessary.residual(), r.necessary.tol);
    ck.at_most(&format!("{prefix}compatibility_drift"), r.compatibility.drift, r.compatibility.tol);
    ck.at_most(&format!("{prefix}curve_match"), r.curve_match, r.curve_tol);
    ck.at_most(&format!("{prefix}normal_bundle"), r.normal_bundle, r.bundle_tol);
    ck.headline(&format!("{prefix}sup_mean_curvature"), r.sup_h, r.minimality_tol);
    ck.info(&format!("{prefix}orientation"), r.necessary.orientation);
    ck.info(&format!("{prefix}extension_axis"), r.j);
}

pub fn bjorling(doc: &SpecDoc, action: Action, ck: &mut Checker, out: &mut Outputs) -> Result<()> {
    let d = data_stage(require(&doc.data, "[data] table")?, ck)?;
    match action {
        Action::Check => {
            let t = ck.resolve_headline("necessary_residual", tol::NECESSARY);
            let nec = check_necessary_with(&d, t)?;
            ck.headline("necessary_residual", nec.residual(), tol::NECESSARY);
            ck.info("residual_ab", nec.residual_ab);
            ck.info("residual_ba", nec.residual_ba);
            ck.info("orientation", nec.orientation);
            if nec.pass() {
                let dec = curve_data(&d)?;
                let compat = compatibility_residual(&dec);
                ck.at_most("compatibility_drift", compat.drift, compat.tol);
                ck.info("compatibility", &compat);
                ck.info("special_case", classify_special(&d)?);
            }
        }
        Action::Solve => {
            let sol = solve_with(require(&doc.extension, "[extension] table")?, &d)?;
            solve_checks(ck, "", &sol.report);
            ck.info("special_case", classify_special(&d)?);
            ck.grid(&sol.surface.grid);
            out.push(("grid.csv".into(), grid_csv(&sol.surface.grid)));
        }
        Action::Nonunique => {
            let opts = doc.nonunique.clone().unwrap_or_default();
            let NonuniqueSpec { away, min_divergence } = opts;
            let pick = |e: &Option<ExtensionSpec>, what: &str| -> Result<ExtensionChoice> {
                extension(require(e, what)?, &d)?
                    .ok_or_else(|| Error::BadInput(format!("{what} cannot be ruled for a non-uniqueness run")))
            };
            let (e1, e2) = (pick(&doc.extension, "[extension] table")?, pick(&doc.second_extension, "[second_extension] table")?);
            let (s1, s2, r) = nonuniqueness(&d, &e1, &e2, away)?;
            solve_checks(ck, "first_", &r.first);
            solve_checks(ck, "second_", &r.second);
            ck.at_most("on_curve_distance", r.on_curve, tol::CURVE_MATCH);
            ck.at_least("divergence", r.divergence, min_divergence);
            ck.info("away", away);
            ck.grid(&s1.surface.grid);
            out.push(("first_grid.csv".into(), grid_csv(&s1.surface.grid)));
            out.push(("second_grid.csv".into(), grid_csv(&s2.surface.grid)));
        }
    }
    Ok(())
}
