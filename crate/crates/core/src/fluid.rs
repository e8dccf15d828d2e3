//! Steady irrotational flow of the virtual gas `p = p0 - 1/rho`.
//!
//! A ZMC graph `psi` is a stream function: `rho = rho0 sqrt|B|` with
//! `B = 1 - psi_x^2 - psi_y^2`, velocity `(psi_y, -psi_x) / rho`, sound speed
//! `c = 1/rho`. The flow is subsonic where the graph is space-like (`B > 0`)
//! and supersonic where it is time-like.

use std::sync::Arc;

use thiserror::Error;

use crate::bjorling::{graph_around_curve, BjorlingError};
use crate::curve::{lift_planar, CurveError, PlanarCurve};
use crate::graph::{GraphError, GraphFunction, Rect};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluidError {
    #[error("rho0 must be positive, got {0}")]
    InvalidGas(f64),
    #[error("curve is not locally convex at u = {u} (|sigma''| = {curvature:e})")]
    NotConvex { u: f64, curvature: f64 },
    #[error("sonic line too close to ({x}, {y}) (B = {b:e})")]
    SonicInRect { x: f64, y: f64, b: f64 },
    #[error("grid needs at least 2 nodes per side, got {0}")]
    InvalidGrid(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Bjorling(#[from] BjorlingError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirtualGas<S> {
    pub rho0: S,
    pub p0: S,
}

impl<S: Real> Default for VirtualGas<S> {
    fn default() -> Self {
        Self {
            rho0: S::one(),
            p0: S::one(),
        }
    }
}

impl<S: Real> VirtualGas<S> {
    pub fn new(rho0: S, p0: S) -> Result<Self, FluidError> {
        if !(rho0 > S::zero()) {
            return Err(FluidError::InvalidGas(rho0.to_f64_lossy()));
        }
        Ok(Self { rho0, p0 })
    }

    pub fn pressure(&self, rho: S) -> S {
        self.p0 - S::one() / rho
    }

    pub fn sound_speed(&self, rho: S) -> S {
        S::one() / rho
    }

    /// Bernoulli constant `k` in `-1/rho^2 + q^2 = k`: `-sign(B) / rho0^2`.
    pub fn bernoulli_k(&self, regime: Regime) -> Option<S> {
        let r2 = self.rho0 * self.rho0;
        match regime {
            Regime::Subsonic => Some(-S::one() / r2),
            Regime::Supersonic => Some(S::one() / r2),
            Regime::Sonic => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Subsonic,
    Supersonic,
    Sonic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Subsonic => "subsonic",
            Regime::Supersonic => "supersonic",
            Regime::Sonic => "sonic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState<S> {
    pub x: S,
    pub y: S,
    pub psi: S,
    pub grad_psi: [S; 2],
    /// `1 - |grad psi|^2`.
    pub b: S,
    pub rho: S,
    /// Infinite components (with the sign of the direction) when sonic.
    pub velocity: [S; 2],
    pub speed: S,
    pub sound_speed: S,
    pub regime: Regime,
}

impl<S: Real> FlowState<S> {
    pub fn is_divergent(&self) -> bool {
        self.regime == Regime::Sonic
    }
}

/// State of the flow with stream function `f` at `(x, y)`; `|B| <= tol` is sonic.
pub fn flow_state<S: Real>(
    f: &GraphFunction<S>,
    gas: &VirtualGas<S>,
    x: S,
    y: S,
    tol: S,
) -> Result<FlowState<S>, GraphError> {
    let j = f.jet(x, y)?;
    let b = j.b();
    let rho = gas.rho0 * b.abs().sqrt();
    let dir = [j.fy, -j.fx];
    let regime = if b.abs() <= tol {
        Regime::Sonic
    } else if b > S::zero() {
        Regime::Subsonic
    } else {
        Regime::Supersonic
    };
    let (velocity, speed, sound_speed) = if regime == Regime::Sonic {
        let inf = |c: S| {
            if c == S::zero() {
                S::zero()
            } else {
                c.signum() * S::infinity()
            }
        };
        ([inf(dir[0]), inf(dir[1])], S::infinity(), S::infinity())
    } else {
        let v = [dir[0] / rho, dir[1] / rho];
        (v, v[0].hypot(v[1]), gas.sound_speed(rho))
    };
    Ok(FlowState {
        x,
        y,
        psi: j.f,
        grad_psi: [j.fx, j.fy],
        b,
        rho,
        velocity,
        speed,
        sound_speed,
        regime,
    })
}

/// Residual of `(rho^2 c^2 - psi_y^2) psi_xx + 2 psi_x psi_y psi_xy + (rho^2 c^2 - psi_x^2) psi_yy`
/// with `rho c = 1`; this is the ZMC residual of the graph.
pub fn verify_stream_equation<S: Real>(f: &GraphFunction<S>, x: S, y: S) -> Result<S, GraphError> {
    crate::graph::zmc_residual(f, x, y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationReport<S> {
    /// `max |div(rho v)|` by central differences.
    pub continuity: S,
    /// `max |v_x - u_y|` by central differences.
    pub irrotationality: S,
    /// Grid median of `-1/rho^2 + q^2`.
    pub bernoulli_k: S,
    /// `max |-1/rho^2 + q^2 - k|`.
    pub bernoulli_deviation: S,
    pub nodes: usize,
}

/// Checks continuity, irrotationality and Bernoulli on an `n x n` grid over
/// `rect` with difference step `h`. The rectangle must keep a distance of
/// about `10 h` from the sonic line.
pub fn verify_conservation<S: Real>(
    f: &GraphFunction<S>,
    gas: &VirtualGas<S>,
    rect: Rect<S>,
    h: S,
    n: usize,
) -> Result<ConservationReport<S>, FluidError> {
    if n < 2 {
        return Err(FluidError::InvalidGrid(n));
    }
    let tol = S::zero();
    let state = |x: S, y: S| -> Result<FlowState<S>, FluidError> {
        let s = flow_state(f, gas, x, y, tol)?;
        Ok(s)
    };
    let mut sign: Option<bool> = None;
    let mut continuity = S::zero();
    let mut irrot = S::zero();
    let mut bern = Vec::with_capacity(n * n);
    let two_h = h + h;
    let margin = S::lit(10.0) * h;
    for i in 0..n {
        let x = rect.x0 + (rect.x1 - rect.x0) * S::lit(i as f64 / (n - 1) as f64);
        for k in 0..n {
            let y = rect.y0 + (rect.y1 - rect.y0) * S::lit(k as f64 / (n - 1) as f64);
            let j = f.jet(x, y)?;
            let g = j.grad_b();
            let dist = j.b().abs() / g[0].hypot(g[1]);
            let positive = j.b() > S::zero();
            if j.b() == S::zero() || dist < margin || sign.is_some_and(|s| s != positive) {
                return Err(FluidError::SonicInRect {
                    x: x.to_f64_lossy(),
                    y: y.to_f64_lossy(),
                    b: j.b().to_f64_lossy(),
                });
            }
            sign = Some(positive);
            let c = state(x, y)?;
            let (xp, xm) = (state(x + h, y)?, state(x - h, y)?);
            let (yp, ym) = (state(x, y + h)?, state(x, y - h)?);
            let flux = |s: &FlowState<S>| [s.rho * s.velocity[0], s.rho * s.velocity[1]];
            let div = (flux(&xp)[0] - flux(&xm)[0]) / two_h + (flux(&yp)[1] - flux(&ym)[1]) / two_h;
            let rot = (xp.velocity[1] - xm.velocity[1]) / two_h
                - (yp.velocity[0] - ym.velocity[0]) / two_h;
            continuity = continuity.max(div.abs());
            irrot = irrot.max(rot.abs());
            bern.push(-S::one() / (c.rho * c.rho) + c.speed * c.speed);
        }
    }
    let mut sorted = bern.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let k = sorted[sorted.len() / 2];
    let dev = bern.iter().fold(S::zero(), |m, &v| m.max((v - k).abs()));
    Ok(ConservationReport {
        continuity,
        irrotationality: irrot,
        bernoulli_k: k,
        bernoulli_deviation: dev,
        nodes: n * n,
    })
}

/// Outcome of the transonic checks along the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct TransonicReport<S> {
    pub samples: usize,
    /// Regimes differ on the two sides at every sample.
    pub regime_flip: bool,
    /// `sigma + eps sigma''/|sigma''|` is supersonic at every sample.
    pub accel_supersonic: bool,
    /// Fitted exponent of `q ~ d^p` on the subsonic side, at the middle sample.
    pub q_power_subsonic: S,
    /// Same on the supersonic side.
    pub q_power_supersonic: S,
    /// Largest `|B|` at the sonic-line vertices.
    pub sonic_line_max_b: S,
}

impl<S: Real> TransonicReport<S> {
    pub fn q_power_ok(&self) -> bool {
        let ok = |p: S| (p + S::lit(0.5)).abs() <= S::lit(0.1);
        ok(self.q_power_subsonic) && ok(self.q_power_supersonic)
    }

    pub fn passed(&self) -> bool {
        self.regime_flip && self.accel_supersonic && self.q_power_ok()
    }
}

#[derive(Clone)]
pub struct TransonicFlow<S: Real> {
    pub psi: GraphFunction<S>,
    /// Image of `sigma` over the parameter window of the graph.
    pub sonic_line: Vec<[S; 2]>,
    pub report: TransonicReport<S>,
}

fn unit<S: Real>(v: [S; 2]) -> [S; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

fn least_squares_slope<S: Real>(xs: &[S], ys: &[S]) -> S {
    let n = S::lit(xs.len() as f64);
    let mx = xs.iter().fold(S::zero(), |a, &b| a + b) / n;
    let my = ys.iter().fold(S::zero(), |a, &b| a + b) / n;
    let (mut sxy, mut sxx) = (S::zero(), S::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Builds the stream function whose sonic line is the locally convex,
/// arclength-parametrized `sigma`, over `u0 +- half_width` with `u0` the
/// domain midpoint, and checks the transonic properties.
pub fn transonic_flow_from_convex_curve<S: Real>(
    sigma: Arc<dyn PlanarCurve<S>>,
    gas: &VirtualGas<S>,
    half_width: S,
    grid: usize,
) -> Result<TransonicFlow<S>, FluidError> {
    let (a, b) = sigma.domain();
    for k in 0..64 {
        let u = a + (b - a) * S::lit((k as f64 + 0.5) / 64.0);
        let acc = sigma.real_derivative(u, 2);
        let kappa = acc[0].hypot(acc[1]);
        if !(kappa > S::lit(1e-8)) {
            return Err(FluidError::NotConvex {
                u: u.to_f64_lossy(),
                curvature: kappa.to_f64_lossy(),
            });
        }
    }
    let curve = lift_planar(sigma.clone())?;
    let u0 = (a + b) / S::lit(2.0);
    let psi = graph_around_curve(&curve, u0, half_width, grid)?;
    let (lo, hi) = ((u0 - half_width).max(a), (u0 + half_width).min(b));
    let line_n = 201;
    let sonic_line: Vec<[S; 2]> = (0..line_n)
        .map(|k| sigma.point(lo + (hi - lo) * S::lit(k as f64 / (line_n - 1) as f64)))
        .collect();
    let r = curve.strip_radius();
    let w_max = half_width.min(S::lit(0.9) * r * r);

    let samples = 16;
    let mut regime_flip = true;
    let mut accel_supersonic = true;
    let tol = S::tol(1e-12, 64.0);
    for k in 0..samples {
        let u = lo + (hi - lo) * S::lit((k as f64 + 0.5) / samples as f64 * 0.8 + 0.1);
        let p = sigma.point(u);
        let acc = sigma.real_derivative(u, 2);
        let kappa = acc[0].hypot(acc[1]);
        let e = unit(acc);
        let eps = S::lit(0.1) * w_max * kappa;
        let inner = flow_state(&psi, gas, p[0] + eps * e[0], p[1] + eps * e[1], tol)?;
        let outer = flow_state(&psi, gas, p[0] - eps * e[0], p[1] - eps * e[1], tol)?;
        regime_flip &= inner.regime != outer.regime
            && inner.regime != Regime::Sonic
            && outer.regime != Regime::Sonic;
        accel_supersonic &= inner.regime == Regime::Supersonic;
    }

    // q ~ d^p over d in [h, 20h] at the middle of the window
    let um = (lo + hi) / S::lit(2.0);
    let p = sigma.point(um);
    let acc = sigma.real_derivative(um, 2);
    let e = unit(acc);
    let h = S::lit(0.1) * w_max * acc[0].hypot(acc[1]) / S::lit(20.0);
    let fit = |side: S| -> Result<S, FluidError> {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for k in 0..8 {
            let d = h * S::lit(20f64.powf(k as f64 / 7.0));
            let s = flow_state(
                &psi,
                gas,
                p[0] + side * d * e[0],
                p[1] + side * d * e[1],
                tol,
            )?;
            xs.push(d.ln());
            ys.push(s.speed.ln());
        }
        Ok(least_squares_slope(&xs, &ys))
    };
    let q_power_supersonic = fit(S::one())?;
    let q_power_subsonic = fit(-S::one())?;

    let mut sonic_line_max_b = S::zero();
    for q in &sonic_line {
        let j = psi.jet(q[0], q[1])?;
        sonic_line_max_b = sonic_line_max_b.max(j.b().abs());
    }

    Ok(TransonicFlow {
        psi,
        sonic_line,
        report: TransonicReport {
            samples,
            regime_flip,
            accel_supersonic,
            q_power_subsonic,
            q_power_supersonic,
            sonic_line_max_b,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{arclength_reparametrize, AnalyticPlanar, PlanarShape};
    use crate::graph::{trace_typechange_curve, CZero, HelicoidGraph, Quadratic};

    fn helicoid() -> GraphFunction<f64> {
        GraphFunction::from_source(HelicoidGraph::default(), Rect::everywhere())
    }

    #[test]
    fn helicoid_states() {
        let g = helicoid();
        let gas = VirtualGas::default();
        let s = flow_state(&g, &gas, 2.0, 0.0, 1e-12).unwrap();
        assert!((s.b - 0.75).abs() < 1e-15);
        assert!((s.rho - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((s.speed - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        // radial
        assert!(s.velocity[1].abs() < 1e-15 && s.velocity[0] > 0.0);
        assert_eq!(s.regime, Regime::Subsonic);
        assert!((s.rho * s.sound_speed - 1.0).abs() < 1e-15);
        let son = flow_state(&g, &gas, 0.6, 0.8, 1e-12).unwrap();
        assert_eq!(son.regime, Regime::Sonic);
        assert!(son.is_divergent() && son.sound_speed.is_infinite());
        let sup = flow_state(&g, &gas, 0.5, 0.0, 1e-12).unwrap();
        assert_eq!(sup.regime, Regime::Supersonic);
        // q^2 - c^2 = -B / rho^2
        for st in [s, sup] {
            let lhs = st.speed * st.speed - st.sound_speed * st.sound_speed;
            assert!((lhs + st.b / (st.rho * st.rho)).abs() < 1e-12);
            assert!((st.grad_psi[0] + st.rho * st.velocity[1]).abs() < 1e-14);
            assert!((st.grad_psi[1] - st.rho * st.velocity[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn stagnation_point() {
        let g = GraphFunction::<f64>::from_source(CZero, Rect::everywhere());
        let s = flow_state(&g, &VirtualGas::new(2.0, 1.0).unwrap(), 0.0, 0.0, 1e-12).unwrap();
        assert_eq!(s.b, 1.0);
        assert_eq!(s.rho, 2.0);
        assert_eq!(s.velocity, [0.0, 0.0]);
        assert_eq!(s.regime, Regime::Subsonic);
        assert!(VirtualGas::new(0.0, 1.0).is_err());
    }

    #[test]
    fn stream_equation() {
        let c0 = GraphFunction::<f64>::from_source(CZero, Rect::everywhere());
        assert!(verify_stream_equation(&c0, 0.7, -1.3).unwrap().abs() < 1e-12);
        assert!(verify_stream_equation(&helicoid(), 1.1, 0.4).unwrap().abs() < 1e-10);
        let x2 = GraphFunction::<f64>::from_source(
            Quadratic::new(0.0, [0.0, 0.0], [2.0, 0.0, 0.0]),
            Rect::everywhere(),
        );
        assert!(verify_stream_equation(&x2, 0.3, 0.2).unwrap().abs() > 0.1);
    }

    #[test]
    fn conservation_on_annulus_sector() {
        let g = helicoid();
        let gas = VirtualGas::default();
        let rect = Rect::new(1.1, 1.1, 2.1, 2.1);
        let r1 = verify_conservation(&g, &gas, rect, 1e-3, 11).unwrap();
        let r2 = verify_conservation(&g, &gas, rect, 5e-4, 11).unwrap();
        assert!((r1.bernoulli_k + 1.0).abs() < 1e-12);
        assert!(r1.bernoulli_deviation < 1e-8);
        assert!(r1.continuity < 1e-6);
        assert!(r1.continuity / r2.continuity >= 3.5 || r1.continuity < 1e-12);
        assert!(r1.irrotationality / r2.irrotationality >= 3.5);
        let fine = verify_conservation(&g, &gas, rect, 5e-5, 11).unwrap();
        assert!(fine.irrotationality < 1e-8);
    }

    #[test]
    fn supersonic_bernoulli_constant_is_positive() {
        let g = helicoid();
        let gas = VirtualGas::new(2.0, 0.0).unwrap();
        let r = verify_conservation(&g, &gas, Rect::new(0.2, 0.1, 0.5, 0.4), 1e-4, 7).unwrap();
        assert!((r.bernoulli_k - 0.25).abs() < 1e-12);
        assert_eq!(gas.bernoulli_k(Regime::Supersonic), Some(0.25));
    }

    #[test]
    fn sonic_line_in_rect_is_rejected() {
        let g = helicoid();
        let e = verify_conservation(
            &g,
            &VirtualGas::default(),
            Rect::new(0.5, 0.5, 1.0, 1.0),
            1e-3,
            5,
        );
        assert!(matches!(e, Err(FluidError::SonicInRect { .. })));
    }

    #[test]
    fn unit_circle_transonic_flow() {
        for clockwise in [false, true] {
            let sigma = Arc::new(AnalyticPlanar::<f64>::unit_circle(clockwise));
            let flow =
                transonic_flow_from_convex_curve(sigma, &VirtualGas::default(), 0.4, 16).unwrap();
            let r = &flow.report;
            assert!(r.passed(), "{r:?}");
            assert!(r.sonic_line_max_b < 1e-8);
            // the stream function is the angle up to sign and constant
            let s = flow_state(
                &flow.psi,
                &VirtualGas::default(),
                0.9 * 3f64.cos(),
                0.9 * 3f64.sin(),
                1e-12,
            )
            .unwrap();
            assert_eq!(s.regime, Regime::Supersonic);
            let j = flow.psi.jet(1.2 * 3f64.cos(), 1.2 * 3f64.sin()).unwrap();
            assert!((1.0 - j.b() - 1.0 / 1.44).abs() < 1e-8);
        }
    }

    #[test]
    fn ellipse_transonic_flow_and_traced_sonic_line() {
        let e = AnalyticPlanar {
            shape: PlanarShape::Ellipse { a: 1.5, b: 1.0 },
            domain: (0.0, std::f64::consts::TAU),
            arclength_flag: false,
            strip_radius: 0.5,
        };
        let sigma = Arc::new(arclength_reparametrize(&e, 128).unwrap());
        let flow =
            transonic_flow_from_convex_curve(sigma, &VirtualGas::default(), 0.5, 16).unwrap();
        assert!(flow.report.passed(), "{:?}", flow.report);
        let mid = flow.sonic_line[100];
        let traced = trace_typechange_curve(&flow.psi, mid, 2e-3, 10_000).unwrap();
        assert!(traced.len() > 50);
        // every traced vertex lies on the ellipse
        for p in &traced.points {
            let r: f64 = (p[0] / 1.5).powi(2) + p[1].powi(2) - 1.0;
            assert!(r.abs() < 2e-6, "{p:?} {r:e}");
        }
    }

    #[test]
    fn straight_line_is_not_convex() {
        let line = AnalyticPlanar {
            shape: PlanarShape::Line {
                origin: [0.0, 0.0],
                dir: [1.0, 0.0],
            },
            domain: (-1.0, 1.0),
            arclength_flag: true,
            strip_radius: 1.0,
        };
        let r = transonic_flow_from_convex_curve(Arc::new(line), &VirtualGas::default(), 0.3, 8);
        assert!(matches!(r, Err(FluidError::NotConvex { .. })));
    }
}
