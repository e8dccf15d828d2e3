//! Singular Björling extensions of a null curve.
//!
//! * maximal side `Phi(u, v) = Re gamma(u + iv)`,
//! * time-like side `Psi(u, v) = (gamma(u + v) + gamma(u - v)) / 2`,
//! * unified `H(u, w)`, equal to `Psi(u, sqrt w)` for `w >= 0` and to
//!   `Phi(u, sqrt(-w))` for `w < 0`; real analytic across `w = 0`.
//!
//! [`graph_around_curve`] inverts the `(x, y)` part of `H` near the curve and
//! returns the surface as a graph `t = f(x, y)`.

use std::sync::Arc;

use num_complex::Complex;
use thiserror::Error;

use crate::curve::{is_nondegenerate_at, AnalyticNullCurve};
use crate::graph::{GraphError, GraphFunction, GraphJet, GraphSource, Rect};
use crate::lorentz::{minkowski_inner, ComplexVec3, LorentzVec3};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BjorlingError {
    #[error("({u}, {v}) lies outside the analyticity strip of the curve")]
    OutsideStrip { u: f64, v: f64 },
    #[error("({u}, {v}) needs the curve outside its domain")]
    OutsideDomain { u: f64, v: f64 },
    #[error("curve is degenerate at u = {u}")]
    Degenerate { u: f64 },
    #[error("seed grid must have at least 2 cells per side, got {0}")]
    InvalidGrid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Maximal,
    Timelike,
    Unified,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Maximal => "max",
            Side::Timelike => "timelike",
            Side::Unified => "unified",
        }
    }
}

/// Point and partial derivatives up to order two of a parametrized surface.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SurfaceJet<S> {
    pub p: LorentzVec3<S>,
    pub pu: LorentzVec3<S>,
    pub pv: LorentzVec3<S>,
    pub puu: LorentzVec3<S>,
    pub puv: LorentzVec3<S>,
    pub pvv: LorentzVec3<S>,
}

impl<S: Real> SurfaceJet<S> {
    /// `E G - F^2` of the induced metric: positive on space-like points,
    /// negative on time-like ones.
    pub fn first_fundamental_det(&self) -> S {
        let e = minkowski_inner(&self.pu, &self.pu);
        let f = minkowski_inner(&self.pu, &self.pv);
        let g = minkowski_inner(&self.pv, &self.pv);
        e * g - f * f
    }
}

fn cx<S: Real>(re: S, im: S) -> Complex<S> {
    Complex::new(re, im)
}

fn err_strip<S: Real>(u: S, v: S) -> BjorlingError {
    BjorlingError::OutsideStrip {
        u: u.to_f64_lossy(),
        v: v.to_f64_lossy(),
    }
}

fn check_strip<S: Real>(curve: &AnalyticNullCurve<S>, u: S, v: S) -> Result<(), BjorlingError> {
    if v.abs() < curve.strip_radius() && curve.contains(u) {
        Ok(())
    } else {
        Err(err_strip(u, v))
    }
}

/// `Re gamma(u + i|v|)`; symmetric in `v` by construction.
pub fn maximal_extension<S: Real>(
    curve: &AnalyticNullCurve<S>,
    u: S,
    v: S,
) -> Result<LorentzVec3<S>, BjorlingError> {
    check_strip(curve, u, v)?;
    Ok(curve.eval(cx(u, v.abs())).re())
}

/// `(gamma(u + v) + gamma(u - v)) / 2`.
pub fn timelike_extension<S: Real>(
    curve: &AnalyticNullCurve<S>,
    u: S,
    v: S,
) -> Result<LorentzVec3<S>, BjorlingError> {
    if !(curve.contains(u + v) && curve.contains(u - v)) {
        return Err(BjorlingError::OutsideDomain {
            u: u.to_f64_lossy(),
            v: v.to_f64_lossy(),
        });
    }
    let a = curve.point(u + v);
    let b = curve.point(u - v);
    Ok((a + b).scale(S::lit(0.5)))
}

/// `H(u, w)`; the space-like side is `w < 0`.
pub fn unified_extension<S: Real>(
    curve: &AnalyticNullCurve<S>,
    u: S,
    w: S,
) -> Result<LorentzVec3<S>, BjorlingError> {
    let r = curve.strip_radius();
    if !(w.abs() < r * r) || !curve.contains(u) {
        return Err(err_strip(u, w));
    }
    if w > S::zero() {
        let s = w.sqrt();
        let a = curve.point(u + s);
        let b = curve.point(u - s);
        Ok((a + b).scale(S::lit(0.5)))
    } else if w < S::zero() {
        Ok(curve.eval(cx(u, (-w).sqrt())).re())
    } else {
        Ok(curve.point(u))
    }
}

fn maximal_jet<S: Real>(curve: &AnalyticNullCurve<S>, u: S, v: S) -> SurfaceJet<S> {
    let z = cx(u, v.abs());
    let sign = if v < S::zero() { -S::one() } else { S::one() };
    let (g0, g1, g2) = (
        curve.eval(z),
        curve.derivative(z, 1),
        curve.derivative(z, 2),
    );
    SurfaceJet {
        p: g0.re(),
        pu: g1.re(),
        pv: -g1.im().scale(sign),
        puu: g2.re(),
        puv: -g2.im().scale(sign),
        pvv: -g2.re(),
    }
}

fn timelike_jet<S: Real>(curve: &AnalyticNullCurve<S>, u: S, v: S) -> SurfaceJet<S> {
    let half = S::lit(0.5);
    let d = |m: usize, x: S| curve.real_derivative(x, m);
    let (a, b) = (u + v, u - v);
    SurfaceJet {
        p: (d(0, a) + d(0, b)).scale(half),
        pu: (d(1, a) + d(1, b)).scale(half),
        pv: (d(1, a) - d(1, b)).scale(half),
        puu: (d(2, a) + d(2, b)).scale(half),
        puv: (d(2, a) - d(2, b)).scale(half),
        pvv: (d(2, a) + d(2, b)).scale(half),
    }
}

/// Complex `H(u, zeta)` and `H_u(u, zeta)`; even in the root, so any branch works.
fn unified_complex<S: Real>(
    curve: &AnalyticNullCurve<S>,
    u: S,
    zeta: Complex<S>,
) -> [ComplexVec3<S>; 2] {
    let s = zeta.sqrt();
    let (a, b) = (cx(u, S::zero()) + s, cx(u, S::zero()) - s);
    let half = S::lit(0.5);
    [
        (curve.eval(a) + curve.eval(b)).scale_real(half),
        (curve.derivative(a, 1) + curve.derivative(b, 1)).scale_real(half),
    ]
}

const SEAM_POINTS: usize = 32;

fn seam_radius<S: Real>(curve: &AnalyticNullCurve<S>) -> S {
    let r = curve.strip_radius();
    S::lit(0.05).min(r * r / S::lit(4.0))
}

/// Jet of `H` in `(u, w)`.
fn unified_jet<S: Real>(curve: &AnalyticNullCurve<S>, u: S, w: S) -> SurfaceJet<S> {
    let rc = seam_radius(curve);
    let half = S::lit(0.5);
    let quarter = S::lit(0.25);
    if w.abs() >= rc / S::lit(4.0) {
        let s = w.abs().sqrt();
        let j = if w > S::zero() {
            timelike_jet(curve, u, s)
        } else {
            maximal_jet(curve, u, s)
        };
        // d/dw = +-1/(2s) d/ds
        let sgn = if w > S::zero() { S::one() } else { -S::one() };
        return SurfaceJet {
            p: j.p,
            pu: j.pu,
            pv: j.pv.scale(sgn * half / s),
            puu: j.puu,
            puv: j.puv.scale(sgn * half / s),
            pvv: j.pvv.scale(quarter / (s * s)) - j.pv.scale(quarter / (s * s * s)),
        };
    }
    // near the seam: Cauchy integrals in w on a circle of radius rc
    let [h0, hu0] = unified_complex(curve, u, cx(w, S::zero()));
    let z = cx(u, S::zero());
    let s = cx(w, S::zero()).sqrt();
    let huu = (curve.derivative(z + s, 2) + curve.derivative(z - s, 2)).scale_real(half);
    let mut d1 = ComplexVec3::zero();
    let mut d2 = ComplexVec3::zero();
    let mut du1 = ComplexVec3::zero();
    let n = SEAM_POINTS;
    for k in 0..n {
        let th = S::TAU() * S::lit(k as f64) / S::lit(n as f64);
        let e = cx(th.cos(), th.sin());
        let [h, hu] = unified_complex(curve, u, cx(w, S::zero()) + e * rc);
        let inv = e.conj();
        d1 += h.scale(inv);
        d2 += h.scale(inv * inv);
        du1 += hu.scale(inv);
    }
    let nn = S::lit(n as f64);
    SurfaceJet {
        p: h0.re(),
        pu: hu0.re(),
        pv: d1.re().scale(S::one() / (nn * rc)),
        puu: huu.re(),
        puv: du1.re().scale(S::one() / (nn * rc)),
        pvv: d2.re().scale(S::lit(2.0) / (nn * rc * rc)),
    }
}

/// One of the three extensions as a parametrized surface with analytic jets.
#[derive(Debug, Clone)]
pub struct ExtensionSurface<S: Real> {
    source: AnalyticNullCurve<S>,
    side: Side,
}

impl<S: Real> ExtensionSurface<S> {
    pub fn new(source: AnalyticNullCurve<S>, side: Side) -> Self {
        Self { source, side }
    }

    pub fn source(&self) -> &AnalyticNullCurve<S> {
        &self.source
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn eval(&self, u: S, v: S) -> Result<LorentzVec3<S>, BjorlingError> {
        match self.side {
            Side::Maximal => maximal_extension(&self.source, u, v),
            Side::Timelike => timelike_extension(&self.source, u, v),
            Side::Unified => unified_extension(&self.source, u, v),
        }
    }

    /// Jet in the surface's own parameters (`(u, v)`, or `(u, w)` when unified).
    pub fn jet(&self, u: S, v: S) -> Result<SurfaceJet<S>, BjorlingError> {
        self.eval(u, v)?;
        Ok(match self.side {
            Side::Maximal => maximal_jet(&self.source, u, v),
            Side::Timelike => timelike_jet(&self.source, u, v),
            Side::Unified => unified_jet(&self.source, u, v),
        })
    }
}

/// Graph `t = f(x, y)` of the unified extension near the curve, evaluated by
/// Newton inversion of `(u, w) -> (x, y)`.
struct BjorlingGraph<S: Real> {
    curve: AnalyticNullCurve<S>,
    u_range: (S, S),
    w_max: S,
    seeds: Vec<([S; 2], [S; 2])>,
}

impl<S: Real> BjorlingGraph<S> {
    fn fail(&self, x: S, y: S, reason: &str) -> GraphError {
        GraphError::InversionFailed {
            x: x.to_f64_lossy(),
            y: y.to_f64_lossy(),
            reason: reason.to_string(),
        }
    }

    fn in_box(&self, q: [S; 2], slack: S) -> bool {
        let (a, b) = self.u_range;
        let du = (b - a) * slack;
        q[0] >= a - du && q[0] <= b + du && q[1].abs() <= self.w_max * (S::one() + slack)
    }

    fn invert(&self, x: S, y: S) -> Result<([S; 2], SurfaceJet<S>), GraphError> {
        let mut q = self
            .seeds
            .iter()
            .min_by(|a, b| {
                let da = (a.1[0] - x).powi(2) + (a.1[1] - y).powi(2);
                let db = (b.1[0] - x).powi(2) + (b.1[1] - y).powi(2);
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|s| s.0)
            .ok_or_else(|| self.fail(x, y, "no seeds"))?;
        let r = self.curve.strip_radius();
        let tol = S::tol(1e-12, 64.0);
        // tabulated curves are only continuous to roundoff across panel
        // boundaries off the axis; Newton may then cycle at that level
        let floor = S::tol(1e-9, 1024.0) * (S::one() + x.abs() + y.abs());
        let mut best: Option<([S; 2], S)> = None;
        let finish = |q: [S; 2]| -> Result<([S; 2], SurfaceJet<S>), GraphError> {
            if !self.in_box(q, S::lit(0.05)) {
                return Err(self.fail(x, y, "outside the invertible neighborhood"));
            }
            Ok((q, unified_jet(&self.curve, q[0], q[1])))
        };
        for _ in 0..50 {
            if !(q[1].abs() < r * r) || !self.curve.contains(q[0]) {
                return Err(self.fail(x, y, "iterate left the parameter strip"));
            }
            let j = unified_jet(&self.curve, q[0], q[1]);
            let (fx, fy) = (j.p.x - x, j.p.y - y);
            let res = fx.hypot(fy);
            match best {
                Some((bq, br)) if res >= br && br <= floor => return finish(bq),
                Some((_, br)) if res >= br => {}
                _ => best = Some((q, res)),
            }
            let (a, b, c, d) = (j.pu.x, j.pv.x, j.pu.y, j.pv.y);
            let det = a * d - b * c;
            if !(det.abs() > S::epsilon()) {
                return Err(self.fail(x, y, "singular Jacobian"));
            }
            let du = (d * fx - b * fy) / det;
            let dw = (a * fy - c * fx) / det;
            q = [q[0] - du, q[1] - dw];
            if du.abs() <= tol * (S::one() + q[0].abs())
                && dw.abs() <= tol * (S::one() + q[1].abs())
            {
                return finish(q);
            }
        }
        if let Some((bq, br)) = best {
            if br <= floor {
                return finish(bq);
            }
        }
        Err(self.fail(x, y, "Newton did not converge"))
    }
}

impl<S: Real> GraphSource<S> for BjorlingGraph<S> {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        Ok(self.invert(x, y)?.1.p.t)
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        let (_, j) = self.invert(x, y)?;
        // J = d(x, y)/d(u, w); grad f = grad T J^-1
        let (a, b, c, d) = (j.pu.x, j.pv.x, j.pu.y, j.pv.y);
        let det = a * d - b * c;
        let inv = [[d / det, -b / det], [-c / det, a / det]];
        let (tu, tw) = (j.pu.t, j.pv.t);
        let fx = tu * inv[0][0] + tw * inv[1][0];
        let fy = tu * inv[0][1] + tw * inv[1][1];
        // M = T2 - fx X2 - fy Y2, Hf = J^-T M J^-1
        let m = |p: fn(&LorentzVec3<S>) -> S| [[p(&j.puu), p(&j.puv)], [p(&j.puv), p(&j.pvv)]];
        let (t2, x2, y2) = (m(|v| v.t), m(|v| v.x), m(|v| v.y));
        let mut mm = [[S::zero(); 2]; 2];
        for r in 0..2 {
            for s in 0..2 {
                mm[r][s] = t2[r][s] - fx * x2[r][s] - fy * y2[r][s];
            }
        }
        let mut h = [[S::zero(); 2]; 2];
        for r in 0..2 {
            for s in 0..2 {
                let mut acc = S::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        acc = acc + inv[k][r] * mm[k][l] * inv[l][s];
                    }
                }
                h[r][s] = acc;
            }
        }
        Ok(GraphJet {
            f: j.p.t,
            fx,
            fy,
            fxx: h[0][0],
            fxy: (h[0][1] + h[1][0]) / S::lit(2.0),
            fyy: h[1][1],
        })
    }

    fn label(&self) -> String {
        format!("bjorling({})", self.curve.label())
    }
}

/// Graph of the unified extension over `u in u0 +- half_width`,
/// `|w| <= min(half_width, 0.9 strip^2)`, seeded from a `grid x grid` sample.
pub fn graph_around_curve<S: Real>(
    curve: &AnalyticNullCurve<S>,
    u0: S,
    half_width: S,
    grid: usize,
) -> Result<GraphFunction<S>, BjorlingError> {
    if grid < 2 {
        return Err(BjorlingError::InvalidGrid(grid));
    }
    if !is_nondegenerate_at(curve, u0, S::tol(1e-10, 64.0)) {
        return Err(BjorlingError::Degenerate {
            u: u0.to_f64_lossy(),
        });
    }
    let (a, b) = curve.domain();
    let u_range = ((u0 - half_width).max(a), (u0 + half_width).min(b));
    let r = curve.strip_radius();
    let w_max = half_width.min(S::lit(0.9) * r * r);
    let mut seeds = Vec::with_capacity((grid + 1) * (grid + 1));
    let mut bbox = [
        S::infinity(),
        S::infinity(),
        S::neg_infinity(),
        S::neg_infinity(),
    ];
    for i in 0..=grid {
        let u = u_range.0 + (u_range.1 - u_range.0) * S::lit(i as f64 / grid as f64);
        for k in 0..=grid {
            let w = w_max * S::lit(2.0 * k as f64 / grid as f64 - 1.0);
            let p = unified_extension(curve, u, w)?;
            bbox = [
                bbox[0].min(p.x),
                bbox[1].min(p.y),
                bbox[2].max(p.x),
                bbox[3].max(p.y),
            ];
            seeds.push(([u, w], [p.x, p.y]));
        }
    }
    let source = BjorlingGraph {
        curve: curve.clone(),
        u_range,
        w_max,
        seeds,
    };
    Ok(GraphFunction::new(
        Arc::new(source),
        Rect::new(bbox[0], bbox[1], bbox[2], bbox[3]),
    ))
}
