//! Closed-form surfaces: PDE residuals, chart consistency, conjugate identities
//! and the quadratic contact of the parabolic completions.

use zmc_core::catalog::{
    alpha0_ii_contact_with, catalog_get, catalog_list, conjugate_identities_check, maxface_check,
    Completion,
};
use zmc_core::graph::{zmc_residual, GraphFunction};

use super::{err, grid2, par_max, Check};

const PDE_SURFACES: [(&str, &str); 3] = [
    ("C_zero", "t = y tanh x"),
    ("S_zero", "e^t cosh x = cosh y"),
    ("helicoid", "x sin t = y cos t"),
];

fn graph_of(name: &str) -> Result<GraphFunction<f64>, String> {
    catalog_get(name)
        .map_err(err)?
        .graph()
        .ok_or_else(|| format!("{name} has no graph chart"))
}

fn residual_on(f: &GraphFunction<f64>, n: usize) -> Result<f64, String> {
    let d = f.domain();
    let pts = grid2((d.x0, d.x1), (d.y0, d.y1), n);
    par_max(&pts, |&(x, y)| zmc_residual(f, x, y).map_err(err))
}

/// Finite-difference step for the residual check; large enough that the
/// second differences stay clear of roundoff on these graphs.
pub const FD_STEP: f64 = 2.5e-4;
/// Steps for the observed-order check.
pub const FD_ORDER_STEPS: (f64, f64) = (0.04, 0.02);

fn pde_checks(out: &mut Vec<Check>) {
    for (name, eq) in PDE_SURFACES {
        let g = graph_of(name);
        out.push(Check::from_result(
            format!("pde_analytic_{name}"),
            format!("zero mean curvature residual of {eq}, analytic jet, 101x101 grid"),
            g.clone().and_then(|f| residual_on(&f, 101)),
            1e-12,
        ));
        out.push(Check::from_result(
            format!("pde_fd_{name}"),
            format!("zero mean curvature residual of {eq}, finite differences h = {FD_STEP}, 101x101 grid"),
            g.clone().and_then(|f| residual_on(&f.finite_difference(FD_STEP), 101)),
            1e-6,
        ));
        // ratio r(h/2) / r(h); second order or better means at most 1/4
        let ratio = g.and_then(|f| {
            let coarse = residual_on(&f.finite_difference(FD_ORDER_STEPS.0), 21)?;
            let fine = residual_on(&f.finite_difference(FD_ORDER_STEPS.1), 21)?;
            Ok(fine / coarse)
        });
        out.push(Check::from_result(
            format!("pde_fd_order_{name}"),
            format!("finite-difference residual of {eq} shrinks at least like h^2 (ratio at h/2 over h)"),
            ratio,
            0.3,
        ));
    }
}

fn chart_checks(out: &mut Vec<Check>) {
    for s in catalog_list() {
        let r = s.max_chart_residual(1000).map_err(err);
        let charts: Vec<&str> = s.charts.iter().map(|c| c.name).collect();
        out.push(Check::from_result(
            format!("chart_{}", s.name),
            format!(
                "{} on charts {}, 1000 samples each",
                s.equation,
                charts.join(", ")
            ),
            r,
            1e-10,
        ));
        for c in &s.charts {
            match maxface_check(c, 200) {
                Ok(None) => {}
                Ok(Some(m)) => {
                    out.push(Check::new(
                        format!("holomorphic_{}_{}", s.name, c.name),
                        "chart is the real part of a null holomorphic curve",
                        m.real_part.max(m.nullity),
                        1e-9,
                    ));
                }
                Err(e) => out.push(Check::from_result(
                    format!("holomorphic_{}_{}", s.name, c.name),
                    "chart is the real part of a null holomorphic curve",
                    Err(e.to_string()),
                    1e-9,
                )),
            }
        }
    }
}

fn identity_checks(out: &mut Vec<Check>) {
    match conjugate_identities_check(1000) {
        Ok(list) => {
            for c in list {
                let tol = if c.name == "cosh_chain" { 1e-10 } else { 1e-9 };
                out.push(Check::new(
                    format!("identity_{}", c.name),
                    c.statement,
                    c.max_residual,
                    tol,
                ));
            }
        }
        Err(e) => out.push(Check::from_result(
            "identity",
            "conjugate identities",
            Err(e.to_string()),
            1e-9,
        )),
    }
}

/// Offset `s = t + c` of `F(t, c, y) = 0` near the line, by bisection.
fn offset_by_bisection(kind: Completion, c: f64, y: f64) -> Option<f64> {
    let f = |s: f64| kind.eval(s - c, c, y);
    // the offset is O(y^2 / c); bracket generously on both sides
    let w = 4.0 * y * y / c.abs();
    let (mut a, mut b) = (-w, w);
    if f(a) * f(b) >= 0.0 {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if f(a) * f(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    Some(0.5 * (a + b))
}

/// `q(c)` from two bisection offsets with the `y^2` bias extrapolated away.
pub(crate) fn contact_oracle(kind: Completion, c: f64) -> Option<f64> {
    let y = 2e-2;
    let q1 = offset_by_bisection(kind, c, y)? / (y * y);
    let q2 = offset_by_bisection(kind, c, y / 2.0)? / (y * y / 4.0);
    Some((4.0 * q2 - q1) / 3.0)
}

pub const CONTACT_PARAMS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

fn contact_checks(out: &mut Vec<Check>) {
    for (kind, label) in [(Completion::Plus, "plus"), (Completion::Minus, "minus")] {
        let qs: Result<Vec<f64>, String> = CONTACT_PARAMS
            .iter()
            .map(|&c| alpha0_ii_contact_with(kind, c).map_err(err))
            .collect();
        let spread = qs.clone().map(|qs| {
            let prods: Vec<f64> = qs.iter().zip(CONTACT_PARAMS).map(|(q, c)| q * c).collect();
            let lo = prods.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = prods.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            hi - lo
        });
        out.push(Check::from_result(
            format!("contact_qc_constant_{label}"),
            "q(c) c is the same for c in {0.5, 1, 2, 5}",
            spread,
            1e-6,
        ));
        let nonzero = qs.clone().map(|qs| {
            let m = qs
                .iter()
                .zip(CONTACT_PARAMS)
                .map(|(q, c)| (q * c).abs())
                .fold(f64::INFINITY, f64::min);
            1.0 / m
        });
        out.push(Check::from_result(
            format!("contact_nonzero_{label}"),
            "1 / min |q(c) c| is finite: the contact is exactly quadratic",
            nonzero,
            1e3,
        ));
        let oracle = qs.map(|qs| {
            qs.iter()
                .zip(CONTACT_PARAMS)
                .map(|(&q, c)| match contact_oracle(kind, c) {
                    Some(o) => ((q - o) / o).abs(),
                    None => f64::NAN,
                })
                .fold(0.0, f64::max)
        });
        out.push(Check::from_result(
            format!("contact_oracle_{label}"),
            "q(c) agrees with bisection root solving of the completion near the light-like line",
            oracle,
            1e-6,
        ));
    }
    let value = alpha0_ii_contact_with(Completion::Plus, 1.0)
        .map(|q| (q + 0.5).abs())
        .map_err(err);
    out.push(Check::from_result(
        "contact_value",
        "q(1) = -1/2 (t + c ~ -y^2 / (2c) along the line)",
        value,
        1e-6,
    ));
}

pub fn run() -> Vec<Check> {
    let mut out = Vec::new();
    pde_checks(&mut out);
    chart_checks(&mut out);
    identity_checks(&mut out);
    contact_checks(&mut out);
    out
}
