mod common;

use chebylift::chebnet::gallery::critical;
use chebylift::chebnet::{build_first_kind, gallery, GalleryName, SphereCurve};
use chebylift::lift::{
    build_minimal, decompose_minimal, gaussian_curvature, isothermal_form, lift_net, mean_curvature, null_form,
    verify_isothermal, verify_null_coords, CurvatureRoute,
};
use chebylift::numerics::{partials, Axis, Partial};
use chebylift::{Error, Vec4};
use proptest::prelude::*;

fn axis(n: usize) -> Axis {
    Axis::linspace(-1.0, 1.0, n).unwrap()
}

fn rotate(p: Vec4, angle: f64) -> Vec4 {
    let (s, c) = angle.sin_cos();
    Vec4::new(p.x0, c * p.x1 - s * p.x3, p.x2, s * p.x1 + c * p.x3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lift_metric_is_null_with_the_angle_identity(seed in any::<u64>()) {
        let (t1, t2) = common::seeded_pair(seed, axis(61));
        let s = lift_net(&build_first_kind(&t1, &t2, Vec4::ZERO).unwrap()).unwrap();
        prop_assert!(verify_null_coords(&s).unwrap().max() <= 1e-6);
        let fu = partials(&s.grid, Partial::U);
        let fv = partials(&s.grid, Partial::V);
        for (i, j, a) in fu.iter() {
            let g12 = a.inner(fv.get(i, j));
            prop_assert!((g12 - (-1.0 + s.theta.get(i, j).cos())).abs() <= 1e-6);
            prop_assert!((g12 - s.g12.get(i, j)).abs() <= 1e-6);
        }
    }

    #[test]
    fn curvature_routes_agree_and_ignore_rotations(seed in any::<u64>(), angle in -3.0f64..3.0) {
        let (t1, t2) = common::seeded_pair(seed, axis(61));
        let s = lift_net(&build_first_kind(&t1, &t2, Vec4::ZERO).unwrap()).unwrap();
        let direct = gaussian_curvature(&s, CurvatureRoute::Direct).unwrap();
        let via = gaussian_curvature(&s, CurvatureRoute::ViaNet).unwrap();
        prop_assert!(direct.values.zip_map(&via.values, |a, b| a - b).sup_abs(false) <= 1e-3);

        let r1 = SphereCurve::new(t1.curve.map(|p| rotate(p, angle))).unwrap();
        let r2 = SphereCurve::new(t2.curve.map(|p| rotate(p, angle))).unwrap();
        let rs = lift_net(&build_first_kind(&r1, &r2, Vec4::ZERO).unwrap()).unwrap();
        let rotated = gaussian_curvature(&rs, CurvatureRoute::ViaNet).unwrap();
        prop_assert!(rotated.values.zip_map(&via.values, |a, b| a - b).sup_abs(false) <= 1e-6);
    }

    #[test]
    fn minimal_representation_round_trips(seed in any::<u64>(), p in prop::array::uniform4(-3.0f64..3.0)) {
        let (n0, n3) = common::seeded_pair(seed, axis(41));
        let s = build_minimal(&n0, &n3, Vec4::from_array(p)).unwrap();
        prop_assert!(mean_curvature(&s).unwrap().sup_norm(false) <= 1e-5);
        let (m0, m3, q) = decompose_minimal(&s).unwrap();
        let again = build_minimal(&m0, &m3, q).unwrap();
        prop_assert!(again.grid.sup_distance(&s.grid) <= 1e-6);
        for (a, b) in m0.points().iter().zip(n0.points()) {
            prop_assert!(a.max_abs_diff(*b) <= 1e-6);
        }
    }
}

#[test]
fn isothermal_form_round_trip() {
    let s = lift_net(&critical::net(81).unwrap()).unwrap();
    let iso = isothermal_form(&s, 41).unwrap();
    let r = verify_isothermal(&iso).unwrap();
    assert!(r.max() <= 1e-6, "{r:?}");
    let back = null_form(&iso, 21).unwrap();
    for (i, j, x) in back.grid.iter() {
        let k = s.grid.u.nearest(back.grid.u.at(i));
        let l = s.grid.v.nearest(back.grid.v.at(j));
        assert!(x.max_abs_diff(s.grid.get(k, l)) <= 1e-12);
    }
    assert!(verify_null_coords(&iso).is_err());
}

#[test]
fn noncritical_lift_is_not_minimal() {
    let g = gallery(GalleryName::Noncritical, 101).unwrap();
    let s = lift_net(&g.net).unwrap();
    let sup_h = mean_curvature(&s).unwrap().sup_norm(false);
    assert!(sup_h >= 0.01);
    assert!(matches!(decompose_minimal(&s), Err(Error::NotMinimal { .. })));
}

#[test]
fn lift_drops_to_its_net() {
    let net = critical::net(31).unwrap();
    let s = lift_net(&net).unwrap();
    assert_eq!(s.spatial(), net.grid);
    for (i, j, p) in s.grid.iter() {
        assert_eq!(p.x0, s.grid.u.at(i) + s.grid.v.at(j));
    }
}
