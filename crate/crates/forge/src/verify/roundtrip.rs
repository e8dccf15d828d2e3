//! Round trips between null curves, Björling extensions and graphs, and the
//! agreement of the two non-degeneracy criteria on `B = 0`.

use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zmc_core::bjorling::{graph_around_curve, ExtensionSurface, Side};
use zmc_core::curve::{by_name, reparametrized, AnalyticPlanar};
use zmc_core::fluid::{transonic_flow_from_convex_curve, VirtualGas};
use zmc_core::graph::{
    classify_point, null_lift_of_typechange, trace_typechange_curve, CZero, ClassifyTolerances,
    GraphError, GraphFunction, HelicoidGraph, Polyline, Quadratic, Rect, SZero,
};
use zmc_core::NullCurve;

use super::{err, interior, par_max, Check};

fn helicoid_residual(t: f64, x: f64, y: f64) -> f64 {
    x * t.sin() - y * t.cos()
}

fn unified_circle(out: &mut Vec<Check>) {
    let helix = by_name("helix").expect("builtin helix");
    let surf = ExtensionSurface::new(helix.clone(), Side::Unified);
    let (a, b) = helix.domain();
    let w_max = 0.9 * helix.strip_radius().powi(2);
    let us = interior(a, b, 41);
    for (label, sign) in [("maximal_side", -1.0), ("timelike_side", 1.0)] {
        let ws: Vec<f64> = interior(0.0, w_max, 20)
            .into_iter()
            .map(|w| sign * w)
            .collect();
        let pts: Vec<(f64, f64)> = us
            .iter()
            .flat_map(|&u| ws.iter().map(move |&w| (u, w)))
            .collect();
        out.push(Check::from_result(
            format!("unified_circle_{label}"),
            "unified extension of the circle lift satisfies x sin t = y cos t",
            par_max(&pts, |&(u, w)| {
                let p = surf.eval(u, w).map_err(err)?;
                Ok(helicoid_residual(p.t, p.x, p.y))
            }),
            1e-9,
        ));
    }
}

/// Distance from `p` to the graph of `cosh` by Newton on the foot point.
fn dist_to_cosh(p: [f64; 2], sign: f64) -> f64 {
    let (px, py) = (p[0], sign * p[1]);
    let mut s = px;
    for _ in 0..50 {
        let g = (s - px) + (s.cosh() - py) * s.sinh();
        let dg = 1.0 + s.sinh().powi(2) + (s.cosh() - py) * s.cosh();
        let d = g / dg;
        s -= d;
        if d.abs() < 1e-15 {
            break;
        }
    }
    (s - px).hypot(s.cosh() - py)
}

fn dist_to_polyline(q: [f64; 2], pl: &Polyline<f64>) -> f64 {
    pl.points
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let d = [b[0] - a[0], b[1] - a[1]];
            let l2 = d[0] * d[0] + d[1] * d[1];
            let s = if l2 > 0.0 {
                (((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / l2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            (q[0] - a[0] - s * d[0]).hypot(q[1] - a[1] - s * d[1])
        })
        .fold(f64::INFINITY, f64::min)
}

const C_ZERO_BOX: f64 = 1.5;

fn c_zero() -> GraphFunction<f64> {
    GraphFunction::from_source(CZero, Rect::new(-C_ZERO_BOX, -4.0, C_ZERO_BOX, 4.0))
}

fn typechange_c_zero(out: &mut Vec<Check>) {
    let f = c_zero();
    let mut worst: Result<f64, String> = Ok(0.0);
    for sign in [1.0, -1.0] {
        let r = trace_typechange_curve(&f, [0.2, sign * 1.1], 2e-3, 100_000)
            .map_err(err)
            .and_then(|pl| {
                if pl.len() < 10 {
                    return Err("trace too short".into());
                }
                let there = pl
                    .points
                    .iter()
                    .map(|&p| dist_to_cosh(p, sign))
                    .fold(0.0, f64::max);
                // cosh samples over the x-range the trace covers
                let xs = pl.points.iter().map(|p| p[0]);
                let lo = xs.clone().fold(f64::INFINITY, f64::min);
                let hi = xs.fold(f64::NEG_INFINITY, f64::max);
                let back = interior(lo, hi, 200)
                    .into_iter()
                    .map(|x| dist_to_polyline([x, sign * x.cosh()], &pl))
                    .fold(0.0, f64::max);
                Ok(there.max(back))
            });
        worst = worst.and_then(|w| r.map(|r| w.max(r)));
    }
    out.push(Check::from_result(
        "typechange_C_zero_hausdorff",
        "traced B = 0 of t = y tanh x is {y = +-cosh x} (Hausdorff distance)",
        worst,
        1e-6,
    ));
}

/// Graph of the null lift of the type-change curve through `seed`, compared
/// with the original graph at offsets from the curve.
fn lift_roundtrip(f: &GraphFunction<f64>, seed: [f64; 2]) -> Result<f64, String> {
    let pl = trace_typechange_curve(f, seed, 2e-3, 100_000).map_err(err)?;
    let lift = null_lift_of_typechange(f, &pl).map_err(err)?;
    let (a, b) = lift.domain();
    let u0 = 0.5 * (a + b);
    let hw = (0.4f64).min(0.45 * (b - a));
    let g = graph_around_curve(&lift, u0, hw, 16).map_err(err)?;
    let mut pts = Vec::new();
    for k in 0..21 {
        let u = u0 - 0.8 * hw + 1.6 * hw * k as f64 / 20.0;
        let p = lift.point(u);
        let (_, fx, fy) = {
            let j = f.jet(p.x, p.y).map_err(err)?;
            (j.f, j.fx, j.fy)
        };
        // grad f is the unit normal of the curve on B = 0
        for d in [-0.02, -0.01, 0.01, 0.02] {
            pts.push((p.x + d * fx, p.y + d * fy));
        }
    }
    par_max(&pts, |&(x, y)| {
        let want = f.value(x, y).map_err(err)?;
        let got = g.value(x, y).map_err(err)?;
        Ok(got - want)
    })
}

fn lift_roundtrips(out: &mut Vec<Check>) {
    out.push(Check::from_result(
        "null_lift_roundtrip_C_zero",
        "graph around the null lift of B = 0 reproduces t = y tanh x near the curve",
        lift_roundtrip(&c_zero(), [0.0, 1.0]),
        1e-6,
    ));
    let s0 = GraphFunction::from_source(SZero, Rect::new(0.05, 0.05, 3.0, 3.0));
    out.push(Check::from_result(
        "null_lift_roundtrip_S_zero",
        "graph around the null lift of B = 0 reproduces e^t cosh x = cosh y near the curve",
        lift_roundtrip(&s0, [1.0, 0.3]),
        1e-6,
    ));
}

/// Same surface from `gamma` and `gamma o (z + a z^2)`: graph values agree.
fn reparam_independence(out: &mut Vec<Check>) {
    let r: Result<f64, String> = (|| {
        let helix: NullCurve = by_name("helix").ok_or("no helix")?;
        let a = 0.05;
        let re = reparametrized(&helix, a, (0.5, 4.0), 0.5).map_err(err)?;
        // f(s) = s + a s^2 = 2.5 at s0
        let s0 = (-1.0 + (1.0 + 4.0 * a * 2.5f64).sqrt()) / (2.0 * a);
        let g1 = graph_around_curve(&helix, 2.5, 0.4, 16).map_err(err)?;
        let g2 = graph_around_curve(&re, s0, 0.4, 16).map_err(err)?;
        let mut pts = Vec::new();
        for th in interior(2.3, 2.7, 9) {
            for r in [0.97, 0.99, 1.01, 1.03] {
                pts.push((r * th.cos(), r * th.sin()));
            }
        }
        par_max(&pts, |&(x, y)| {
            Ok(g1.value(x, y).map_err(err)? - g2.value(x, y).map_err(err)?)
        })
    })();
    out.push(Check::from_result(
        "reparametrization_independence",
        "graphs around gamma and gamma o (z + a z^2) coincide",
        r,
        1e-8,
    ));
}

fn sonic_trace(out: &mut Vec<Check>) {
    let r = (|| {
        let flow = transonic_flow_from_convex_curve(
            Arc::new(AnalyticPlanar::unit_circle(false)),
            &VirtualGas::default(),
            0.5,
            16,
        )
        .map_err(err)?;
        let mid = flow.sonic_line[flow.sonic_line.len() / 2];
        let pl = trace_typechange_curve(&flow.psi, mid, 2e-3, 10_000).map_err(err)?;
        if pl.len() < 50 {
            return Err(format!("trace too short ({} points)", pl.len()));
        }
        // the trace stays inside the graph domain, so compare one way only
        Ok(pl
            .points
            .iter()
            .map(|p: &[f64; 2]| (p[0].hypot(p[1]) - 1.0).abs())
            .fold(0.0, f64::max))
    })();
    out.push(Check::from_result(
        "sonic_line_trace_unit_circle",
        "traced type-change curve of the transonic flow is the unit circle",
        r,
        1e-6,
    ));
}

/// A point on `B = 0` of some zero mean curvature graph.
fn random_point(rng: &mut ChaCha8Rng) -> (GraphFunction<f64>, [f64; 2]) {
    let all = Rect::everywhere();
    match rng.random_range(0..4u8) {
        0 => {
            let x: f64 = rng.random_range(-2.0..2.0);
            let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
            (GraphFunction::from_source(CZero, all), [x, s * x.cosh()])
        }
        1 => {
            // tanh y = +-sech x
            let x: f64 = rng.random_range(0.1..3.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
            (
                GraphFunction::from_source(SZero, all),
                [x, s * (1.0 / x.cosh()).atanh()],
            )
        }
        2 => {
            let th: f64 = rng.random_range(-3.1..3.1);
            (
                GraphFunction::from_source(HelicoidGraph::default(), all),
                [th.cos(), th.sin()],
            )
        }
        _ => {
            // |grad f| = 1 at the origin and the equation holds there; the
            // Hessian scale spans many decades, sometimes exactly zero
            let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (c, s) = (a.cos(), a.sin());
            let scale = if rng.random_range(0..10u8) == 0 {
                0.0
            } else {
                10f64.powf(rng.random_range(-12.0..1.0))
            };
            let hxy: f64 = scale * rng.random_range(-1.0..1.0);
            let free: f64 = scale * rng.random_range(-1.0..1.0);
            // (1 - gy^2) hxx + 2 gx gy hxy + (1 - gx^2) hyy = 0 with g = (c, s),
            // i.e. c^2 hxx + 2 c s hxy + s^2 hyy = 0; solve for the better-conditioned entry
            let h = if c * c >= s * s {
                let hyy = free;
                [-(2.0 * c * s * hxy + s * s * hyy) / (c * c), hxy, hyy]
            } else {
                let hxx = free;
                [hxx, hxy, -(c * c * hxx + 2.0 * c * s * hxy) / (s * s)]
            };
            (
                GraphFunction::from_source(Quadratic::new(0.0, [c, s], h), all),
                [0.0, 0.0],
            )
        }
    }
}

pub const PROP_EQUIV_SAMPLES: usize = 10_000;
pub const PROP_EQUIV_TOL: f64 = 1e-8;

/// Count of points where the gradient and Hessian criteria disagree, or
/// where the generated point is not on `B = 0`.
pub fn prop_equiv_disagreements(n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = ClassifyTolerances {
        on_curve: 1e-10,
        gradient: PROP_EQUIV_TOL,
    };
    let mut bad = 0;
    for _ in 0..n {
        let (f, p) = random_point(&mut rng);
        match classify_point(&f, p[0], p[1], tol) {
            Ok(c) if c.on_curve => {}
            Ok(_) => bad += 1,
            Err(GraphError::CriteriaDisagree { .. }) => bad += 1,
            Err(e) => return Err(format!("{} at {p:?}: {e}", f.label())),
        }
    }
    Ok(bad)
}

fn prop_equiv(out: &mut Vec<Check>) {
    out.push(Check::from_result(
        "prop_equiv_agreement",
        "|grad B| > tol iff 2 sqrt|det Hess f| > tol on B = 0 (count of disagreements in 10^4 random points)",
        prop_equiv_disagreements(PROP_EQUIV_SAMPLES, 20_240_601).map(|b| b as f64),
        0.0,
    ));
}

pub fn run() -> Vec<Check> {
    let mut out = Vec::new();
    unified_circle(&mut out);
    typechange_c_zero(&mut out);
    lift_roundtrips(&mut out);
    reparam_independence(&mut out);
    sonic_trace(&mut out);
    prop_equiv(&mut out);
    out
}
