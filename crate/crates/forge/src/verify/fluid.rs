//! Virtual-gas flows: Bernoulli, conservation laws and the transonic circle.

use std::sync::Arc;

use zmc_core::curve::{arclength_reparametrize, AnalyticPlanar, PlanarShape};
use zmc_core::fluid::{
    flow_state, transonic_flow_from_convex_curve, verify_conservation, ConservationReport, Regime,
    TransonicFlow, VirtualGas,
};
use zmc_core::graph::{CZero, GraphFunction, HelicoidGraph, Rect};

use super::{err, Check};

fn helicoid() -> GraphFunction<f64> {
    GraphFunction::from_source(HelicoidGraph::default(), Rect::everywhere())
}

struct Case {
    name: &'static str,
    graph: GraphFunction<f64>,
    rect: Rect<f64>,
    gas: VirtualGas<f64>,
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "helicoid_subsonic",
            graph: helicoid(),
            rect: Rect::new(1.1, 1.1, 2.1, 2.1),
            gas: VirtualGas::default(),
        },
        Case {
            name: "helicoid_supersonic",
            graph: helicoid(),
            rect: Rect::new(0.3, 0.25, 0.55, 0.5),
            gas: VirtualGas { rho0: 2.0, p0: 0.0 },
        },
        Case {
            name: "C_zero_subsonic",
            graph: GraphFunction::from_source(CZero, Rect::everywhere()),
            rect: Rect::new(-1.0, -0.5, 1.0, 0.5),
            gas: VirtualGas::default(),
        },
    ]
}

fn conservation(c: &Case, h: f64) -> Result<ConservationReport<f64>, String> {
    verify_conservation(&c.graph, &c.gas, c.rect, h, 21).map_err(err)
}

fn conservation_checks(out: &mut Vec<Check>) {
    for c in cases() {
        let coarse = conservation(&c, 2e-3);
        let fine = conservation(&c, 1e-3);
        out.push(Check::from_result(
            format!("bernoulli_{}", c.name),
            "-1/rho^2 + q^2 is constant on a sonic-line-avoiding grid",
            fine.clone().map(|r| r.bernoulli_deviation),
            1e-8,
        ));
        let k_expected = if c.name.ends_with("supersonic") {
            1.0
        } else {
            -1.0
        } / (c.gas.rho0 * c.gas.rho0);
        out.push(Check::from_result(
            format!("bernoulli_k_{}", c.name),
            "Bernoulli constant is -sign(B) / rho0^2",
            fine.clone().map(|r| (r.bernoulli_k - k_expected).abs()),
            1e-12,
        ));
        // the second-order difference error should drop by 4 when h halves;
        // at roundoff level the ratio is meaningless and counts as converged
        let order = |pick: fn(&ConservationReport<f64>) -> f64| -> Result<f64, String> {
            let (a, b) = (coarse.clone()?, fine.clone()?);
            let (ra, rb) = (pick(&a), pick(&b));
            Ok(if ra < 1e-11 { 0.0 } else { rb / ra })
        };
        out.push(Check::from_result(
            format!("continuity_order_{}", c.name),
            "div(rho v) residual ratio at h/2 over h is about 1/4",
            order(|r| r.continuity),
            0.3,
        ));
        out.push(Check::from_result(
            format!("irrotationality_order_{}", c.name),
            "curl v residual ratio at h/2 over h is about 1/4",
            order(|r| r.irrotationality),
            0.3,
        ));
        // with the h^2 term extrapolated away only the continuum residual remains
        let extrapolated = |pick: fn(&ConservationReport<f64>) -> f64| -> Result<f64, String> {
            let (a, b) = (coarse.clone()?, fine.clone()?);
            Ok((4.0 * pick(&b) - pick(&a)).abs() / 3.0)
        };
        out.push(Check::from_result(
            format!("continuity_{}", c.name),
            "div(rho v) = 0: Richardson extrapolation of the central-difference residuals at h = 2e-3, 1e-3",
            extrapolated(|r| r.continuity),
            1e-8,
        ));
        out.push(Check::from_result(
            format!("irrotationality_{}", c.name),
            "curl v = 0: Richardson extrapolation of the central-difference residuals at h = 2e-3, 1e-3",
            extrapolated(|r| r.irrotationality),
            1e-8,
        ));
    }
}

/// Radius where `B` changes sign along the ray at angle `th`, by bisection in `[0.5, 1.5]`.
fn sonic_radius(
    flow: &TransonicFlow<f64>,
    gas: &VirtualGas<f64>,
    th: f64,
    r0: f64,
    r1: f64,
) -> Result<f64, String> {
    let b = |r: f64| -> Result<f64, String> {
        Ok(flow_state(&flow.psi, gas, r * th.cos(), r * th.sin(), 0.0)
            .map_err(err)?
            .b)
    };
    let (mut lo, mut hi) = (r0, r1);
    let (blo, bhi) = (b(lo)?, b(hi)?);
    if blo.signum() == bhi.signum() {
        return Err(format!("no sign change of B on the ray at angle {th}"));
    }
    for _ in 0..100 {
        let m = 0.5 * (lo + hi);
        if b(m)?.signum() == blo.signum() {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn circle_checks(out: &mut Vec<Check>) {
    for clockwise in [false, true] {
        let label = if clockwise {
            "unit_circle_clockwise"
        } else {
            "unit_circle"
        };
        let gas = VirtualGas::default();
        let flow = transonic_flow_from_convex_curve(
            Arc::new(AnalyticPlanar::unit_circle(clockwise)),
            &gas,
            0.5,
            16,
        )
        .map_err(err);
        let angles: Vec<f64> = flow
            .as_ref()
            .map(|f| {
                f.sonic_line
                    .iter()
                    .step_by(20)
                    .map(|p: &[f64; 2]| p[1].atan2(p[0]))
                    .collect()
            })
            .unwrap_or_default();
        let boundary = flow.clone().and_then(|f| {
            let mut worst = 0.0f64;
            for &th in &angles {
                worst = worst.max((sonic_radius(&f, &gas, th, 0.8, 1.2)? - 1.0).abs());
            }
            Ok(worst)
        });
        out.push(Check::from_result(
            format!("sonic_radius_{label}"),
            "regime boundary of the flow lies on r = 1",
            boundary,
            1e-8,
        ));
        let interior = flow.clone().and_then(|f| {
            let mut bad = 0usize;
            for &th in &angles {
                let at =
                    |r: f64| flow_state(&f.psi, &gas, r * th.cos(), r * th.sin(), 0.0).map_err(err);
                bad += usize::from(at(0.9)?.regime != Regime::Supersonic);
                bad += usize::from(at(1.1)?.regime != Regime::Subsonic);
            }
            Ok(bad as f64)
        });
        out.push(Check::from_result(
            format!("supersonic_interior_{label}"),
            "supersonic at r = 0.9 and subsonic at r = 1.1 (count of violations)",
            interior,
            0.0,
        ));
        transonic_report_checks(label, flow, out);
    }
    let ellipse = AnalyticPlanar {
        shape: PlanarShape::Ellipse { a: 1.5, b: 1.0 },
        domain: (0.0, std::f64::consts::TAU),
        arclength_flag: false,
        strip_radius: 0.5,
    };
    let flow = arclength_reparametrize(&ellipse, 128)
        .map_err(err)
        .and_then(|s| {
            transonic_flow_from_convex_curve(Arc::new(s), &VirtualGas::default(), 0.5, 16)
                .map_err(err)
        });
    transonic_report_checks("ellipse", flow, out);
}

fn transonic_report_checks(
    label: &str,
    flow: Result<TransonicFlow<f64>, String>,
    out: &mut Vec<Check>,
) {
    let report = flow.map(|f| f.report);
    out.push(Check::from_result(
        format!("regime_flip_{label}"),
        "regime differs on the two sides of the curve at every sample",
        report
            .clone()
            .map(|r| if r.regime_flip { 0.0 } else { 1.0 }),
        0.0,
    ));
    out.push(Check::from_result(
        format!("accel_supersonic_{label}"),
        "sigma'' points into the supersonic region at every sample",
        report
            .clone()
            .map(|r| if r.accel_supersonic { 0.0 } else { 1.0 }),
        0.0,
    ));
    out.push(Check::from_result(
        format!("q_power_{label}"),
        "fitted exponent p of q ~ d^p is -1/2 within 0.1 on both sides (deviation)",
        report.clone().map(|r| {
            (r.q_power_subsonic + 0.5)
                .abs()
                .max((r.q_power_supersonic + 0.5).abs())
        }),
        0.1,
    ));
    out.push(Check::from_result(
        format!("sonic_line_b_{label}"),
        "B = 0 along the image of sigma",
        report.map(|r| r.sonic_line_max_b),
        1e-8,
    ));
}

pub fn run() -> Vec<Check> {
    let mut out = Vec::new();
    conservation_checks(&mut out);
    circle_checks(&mut out);
    out
}
