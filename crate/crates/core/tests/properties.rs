use std::f64::consts::TAU;

use proptest::prelude::*;
use zmc_core::bjorling::{
    graph_around_curve, maximal_extension, timelike_extension, ExtensionSurface, Side,
};
use zmc_core::curve::{by_name, helix, reparametrized};
use zmc_core::fluid::{flow_state, VirtualGas};
use zmc_core::graph::{
    hessian_scale, zmc_residual, CZero, GraphFunction, HelicoidGraph, Rect, SZero,
};
use zmc_core::weierstrass::{fold_criterion, singular_residual, weierstrass_from_null_curve};
use zmc_core::{minkowski_inner, Complex};

const CURVES: [&str; 5] = [
    "helix",
    "alpha",
    "beta",
    "scherk_null",
    "parabolic_directrix",
];

fn helicoid_residual(t: f64, x: f64, y: f64) -> f64 {
    x * t.sin() - y * t.cos()
}

/// A point `(u, s)` with `u` well inside the domain and `|s| < 0.8 strip`, as fractions.
fn strip_fractions() -> impl Strategy<Value = (f64, f64)> {
    (0.1..0.9f64, -0.8..0.8f64)
}

proptest! {
    #[test]
    fn extensions_restrict_to_the_curve(name in prop::sample::select(CURVES.to_vec()), s in 0.05..0.95f64) {
        let c = by_name(name).unwrap();
        let (a, b) = c.domain();
        let u = a + (b - a) * s;
        let p = c.point(u);
        prop_assert!(maximal_extension(&c, u, 0.0).unwrap().distance(&p) < 1e-12 * (1.0 + p.euclid_norm()));
        prop_assert!(timelike_extension(&c, u, 0.0).unwrap().distance(&p) < 1e-12 * (1.0 + p.euclid_norm()));
    }

    #[test]
    fn circle_extensions_lie_on_the_helicoid((s, v) in strip_fractions()) {
        let c = by_name("helix").unwrap();
        let (a, b) = c.domain();
        let u = a + (b - a) * s;
        let m = maximal_extension(&c, u, v * c.strip_radius()).unwrap();
        prop_assert!(helicoid_residual(m.t, m.x, m.y).abs() < 1e-10);
        let tv = 0.5 * v * s.min(1.0 - s) * (b - a);
        let t = timelike_extension(&c, u, tv).unwrap();
        prop_assert!(helicoid_residual(t.t, t.x, t.y).abs() < 1e-10);
    }

    #[test]
    fn extension_sides_have_the_expected_causal_character((s, v) in strip_fractions()) {
        prop_assume!(v.abs() > 0.05);
        let c = by_name("alpha").unwrap();
        let (a, b) = c.domain();
        let u = a + (b - a) * s;
        let r = c.strip_radius();
        let max = ExtensionSurface::new(c.clone(), Side::Maximal).jet(u, v * r).unwrap();
        prop_assert!(max.first_fundamental_det() > 0.0);
        let tl = ExtensionSurface::new(c, Side::Timelike)
            .jet(u, 0.5 * v * s.min(1.0 - s) * (b - a))
            .unwrap();
        prop_assert!(tl.first_fundamental_det() < 0.0);
    }

    #[test]
    fn quadratic_reparametrization_composes(a in -0.05..0.05f64, (s, v) in strip_fractions()) {
        let base = helix(1.0, false, (-1.0, TAU + 1.0), 1.0).unwrap();
        let re = reparametrized(&base, a, (0.5, 4.0), 0.3).unwrap();
        let z = Complex::new(0.5 + 3.5 * s, 0.3 * v);
        let want = base.eval(z + z * z * a);
        let got = re.eval(z);
        prop_assert!((got.t - want.t).norm() + (got.x - want.x).norm() + (got.y - want.y).norm() < 1e-12);
    }

    #[test]
    fn null_curves_are_null_off_the_axis(name in prop::sample::select(CURVES.to_vec()), (s, v) in strip_fractions()) {
        let c = by_name(name).unwrap();
        let (a, b) = c.domain();
        let z = Complex::new(a + (b - a) * s, 0.5 * v * c.strip_radius());
        let d = c.derivative(z, 1);
        prop_assert!(d.null_form().norm() < 1e-11 * (1.0 + d.norm() * d.norm()));
    }

    #[test]
    fn fold_criterion_vanishes_on_the_axis(name in prop::sample::select(CURVES.to_vec()), s in 0.02..0.98f64) {
        let c = by_name(name).unwrap();
        let data = weierstrass_from_null_curve(&c).unwrap();
        let (a, b) = c.domain();
        let z = Complex::new(a + (b - a) * s, 0.0);
        prop_assert!(fold_criterion(&data, z).abs() < 1e-10);
        prop_assert!(singular_residual(&data, z) < 1e-10);
    }

    #[test]
    fn graph_around_the_circle_reproduces_the_maximal_extension(s in -0.8..0.8f64, v in 0.05..0.6f64) {
        let c = by_name("helix").unwrap();
        let u0 = 2.0;
        let g = graph_around_curve(&c, u0, 0.5, 16).unwrap();
        let p = maximal_extension(&c, u0 + 0.5 * s, v).unwrap();
        let t = g.value(p.x, p.y).unwrap();
        prop_assert!((t - p.t).abs() < 1e-9);
    }

    #[test]
    fn finite_differences_converge_at_least_quadratically(x in -1.5..1.5f64, y in -1.5..1.5f64) {
        for f in [
            GraphFunction::from_source(CZero, Rect::everywhere()),
            GraphFunction::from_source(SZero, Rect::everywhere()),
        ] {
            let coarse = zmc_residual(&f.finite_difference(0.04), x, y).unwrap().abs();
            let fine = zmc_residual(&f.finite_difference(0.02), x, y).unwrap().abs();
            // below 1e-9 the coarse error is already at roundoff relative to the jet
            prop_assume!(coarse > 1e-9);
            prop_assert!(fine / coarse < 0.3, "ratio {} at ({x}, {y})", fine / coarse);
        }
    }

    #[test]
    fn on_the_type_change_curve_hessian_and_gradient_scales_match(x in -2.0..2.0f64, sign in prop::bool::ANY) {
        let f = GraphFunction::from_source(CZero, Rect::everywhere());
        let y = if sign { x.cosh() } else { -x.cosh() };
        let j = f.jet(x, y).unwrap();
        prop_assert!(j.b().abs() < 1e-12);
        let g = j.grad_b();
        let grad = g[0].hypot(g[1]);
        prop_assert!((grad - hessian_scale(j.hessian_det())).abs() < 1e-10 * (1.0 + grad));
    }

    #[test]
    fn bernoulli_constant_is_minus_sign_b_over_rho0_squared(r in 0.2..3.0f64, th in 0.0..TAU, rho0 in 0.5..3.0f64) {
        prop_assume!((r - 1.0).abs() > 0.02);
        let f = GraphFunction::from_source(HelicoidGraph::default(), Rect::everywhere());
        let gas = VirtualGas::new(rho0, 0.0).unwrap();
        let s = flow_state(&f, &gas, r * th.cos(), r * th.sin(), 1e-12).unwrap();
        let k = -1.0 / (s.rho * s.rho) + s.speed * s.speed;
        let want = -s.b.signum() / (rho0 * rho0);
        prop_assert!((k - want).abs() < 1e-10 * (1.0 + k.abs()));
    }
}

#[test]
fn circle_lift_is_null_with_light_like_velocity() {
    let c = by_name("helix").unwrap();
    for k in 0..32 {
        let u = TAU * k as f64 / 32.0;
        let d = c.real_derivative(u, 1);
        assert!(minkowski_inner(&d, &d).abs() < 1e-14);
    }
}

#[test]
fn single_precision_helix_extension_is_on_the_helicoid() {
    let c = helix(1.0f32, false, (0.0, 6.0), 1.0).unwrap();
    let p = maximal_extension(&c, 2.0f32, 0.5).unwrap();
    assert!((p.x * p.t.sin() - p.y * p.t.cos()).abs() < 1e-5);
}
