mod common;

use chebylift::minkowski::{
    build_frame, causal_class_tol, frame_identity_residuals, plane_projector, project_lightlike, wedge3, CausalClass,
};
use chebylift::{Error, Vec4};
use proptest::prelude::*;

fn boosted_pair(seed: u64, rapidity: f64) -> (Vec4, Vec4) {
    let mut rng = common::rng(seed);
    let l = common::Lorentz::random(&mut rng, rapidity);
    (l.apply(Vec4::basis(1)), l.apply(Vec4::basis(2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frame_invariants_hold(seed in any::<u64>()) {
        let (a, b) = boosted_pair(seed, 1.5);
        let f = build_frame(a, b).unwrap();
        prop_assert!(f.invariant_residual() <= 1e-10);
        prop_assert!(frame_identity_residuals(&f).max() <= 1e-10);
        prop_assert!((f.nu.inner(f.nu) - 1.0).abs() <= 1e-12);
        prop_assert!((f.n0.dot3(f.n3) - f.theta.cos()).abs() <= 1e-10);
    }

    #[test]
    fn frame_depends_only_on_the_oriented_plane(seed in any::<u64>(), phi in -3.0f64..3.0) {
        let (a, b) = boosted_pair(seed, 1.0);
        let (c, s) = (phi.cos(), phi.sin());
        let f = build_frame(a, b).unwrap();
        let g = build_frame(a * c + b * s, b * c - a * s).unwrap();
        prop_assert!(f.tau.max_abs_diff(g.tau) <= 1e-9);
        prop_assert!(f.nu.max_abs_diff(g.nu) <= 1e-9);
        prop_assert!(f.n0.max_abs_diff(g.n0) <= 1e-9);
        prop_assert!(f.n3.max_abs_diff(g.n3) <= 1e-9);
    }

    #[test]
    fn swapping_the_pair_exchanges_the_null_directions(seed in any::<u64>()) {
        let (a, b) = boosted_pair(seed, 1.0);
        let f = build_frame(a, b).unwrap();
        let g = build_frame(b, a).unwrap();
        prop_assert!(f.nu.max_abs_diff(-g.nu) <= 1e-10);
        prop_assert!(f.n0.max_abs_diff(g.n3) <= 1e-10);
        prop_assert!(f.n3.max_abs_diff(g.n0) <= 1e-10);
    }

    #[test]
    fn normal_null_directions_are_orthogonal_to_the_plane(seed in any::<u64>()) {
        let (a, b) = boosted_pair(seed, 1.2);
        let f = build_frame(a, b).unwrap();
        for l in [f.l0(), f.l3()] {
            prop_assert!(l.inner(l).abs() <= 1e-9);
            prop_assert!(l.inner(a).abs() <= 1e-9 * l.euclid_norm());
            prop_assert!(l.inner(b).abs() <= 1e-9 * l.euclid_norm());
        }
    }

    #[test]
    fn wedge_is_orthogonal_to_its_factors(x in prop::array::uniform4(-2.0f64..2.0),
                                          y in prop::array::uniform4(-2.0f64..2.0),
                                          z in prop::array::uniform4(-2.0f64..2.0)) {
        let (x, y, z) = (Vec4::from_array(x), Vec4::from_array(y), Vec4::from_array(z));
        let w = wedge3(x, y, z);
        for v in [x, y, z] {
            prop_assert!(w.inner(v).abs() <= 1e-12 * (1.0 + w.euclid_norm() * v.euclid_norm()));
        }
    }

    #[test]
    fn plane_projector_is_idempotent(seed in any::<u64>(), x in prop::array::uniform4(-2.0f64..2.0)) {
        let (a, b) = boosted_pair(seed, 1.0);
        let p = plane_projector(a, b).unwrap();
        let apply = |v: Vec4| p[0] * v.x0 + p[1] * v.x1 + p[2] * v.x2 + p[3] * v.x3;
        let x = Vec4::from_array(x);
        let once = apply(x);
        prop_assert!(apply(once).max_abs_diff(once) <= 1e-9 * (1.0 + once.euclid_norm()));
        prop_assert!(apply(a).max_abs_diff(a) <= 1e-9 * a.euclid_norm());
        prop_assert!((x - once).inner(a).abs() <= 1e-8 * (1.0 + x.euclid_norm()) * a.euclid_norm());
    }

    #[test]
    fn lightlike_projection_ignores_scale(p in prop::array::uniform3(-1.0f64..1.0), k in 0.1f64..10.0) {
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        prop_assume!(n > 0.1);
        let s = Vec4::spatial3(p[0] / n, p[1] / n, p[2] / n);
        let l = (Vec4::basis(0) + s) * k;
        prop_assert_eq!(causal_class_tol(l, 1e-12), CausalClass::Lightlike);
        prop_assert!(project_lightlike(l).unwrap().max_abs_diff(s) <= 1e-12);
    }
}

#[test]
fn degenerate_pairs_are_rejected() {
    let a = Vec4::basis(1);
    assert!(build_frame(a, a).is_err());
    assert!(build_frame(a, Vec4::basis(0)).is_err());
    assert!(matches!(project_lightlike(Vec4::basis(1)), Err(Error::NotLightlike { .. })));
    let null = Vec4::new(1.0, 1.0, 0.0, 0.0);
    assert!(plane_projector(null, Vec4::basis(2)).is_err());
}

#[test]
fn spatial_pair_gives_opposite_null_directions() {
    let f = build_frame(Vec4::basis(1), Vec4::basis(2)).unwrap();
    assert_eq!(f.tau, Vec4::basis(0));
    assert!(f.n0.max_abs_diff(-f.n3) < 1e-15);
    assert!((f.theta - std::f64::consts::PI).abs() < 1e-12);
}
