//! Predictor-corrector tracing of `{B = 0}` and its null lift.

use std::sync::Arc;

use super::{ClassifyTolerances, GraphError, GraphFunction, GraphJet};
use crate::cheb::PiecewiseChebyshev;
use crate::curve::{is_nondegenerate_at, AnalyticNullCurve, ChebyshevCurve, Validation};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    pub step: f64,
    pub max_points: usize,
    pub tol: ClassifyTolerances,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            step: 2e-3,
            max_points: 100_000,
            tol: ClassifyTolerances::default(),
        }
    }
}

/// Ordered points of a traced type-change curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<S> {
    pub points: Vec<[S; 2]>,
    pub closed: bool,
}

impl<S: Real> Polyline<S> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(x, y, B, |grad B|)` per vertex.
    pub fn annotate(&self, f: &GraphFunction<S>) -> Result<Vec<[S; 4]>, GraphError> {
        self.points
            .iter()
            .map(|&[x, y]| {
                let j = f.jet(x, y)?;
                let g = j.grad_b();
                Ok([x, y, j.b(), g[0].hypot(g[1])])
            })
            .collect()
    }
}

fn norm<S: Real>(v: [S; 2]) -> S {
    v[0].hypot(v[1])
}

struct Tracer<'a, S: Real> {
    f: &'a GraphFunction<S>,
    on_curve: S,
    gradient: S,
}

impl<S: Real> Tracer<'_, S> {
    fn degenerate(&self, p: [S; 2], g: S) -> GraphError {
        GraphError::DegenerateOnCurve {
            x: p[0].to_f64_lossy(),
            y: p[1].to_f64_lossy(),
            grad_b: g.to_f64_lossy(),
        }
    }

    /// Newton along `grad B` onto `B = 0`.
    fn correct(&self, mut p: [S; 2]) -> Result<([S; 2], GraphJet<S>), GraphError> {
        let mut last = self.f.jet_unchecked(p[0], p[1])?;
        for _ in 0..50 {
            let b = last.b();
            let g = last.grad_b();
            let gn = norm(g);
            if !(gn > self.gradient) {
                return Err(self.degenerate(p, gn));
            }
            let k = b / (gn * gn);
            let dp = [k * g[0], k * g[1]];
            p = [p[0] - dp[0], p[1] - dp[1]];
            last = self.f.jet_unchecked(p[0], p[1])?;
            let small = norm(dp) <= S::epsilon() * S::lit(16.0) * (S::one() + norm(p));
            if last.b().abs() <= self.on_curve && (small || last.b() == S::zero()) {
                return Ok((p, last));
            }
        }
        if last.b().abs() <= self.on_curve {
            Ok((p, last))
        } else {
            Err(GraphError::NotOnCurve {
                x: p[0].to_f64_lossy(),
                y: p[1].to_f64_lossy(),
                b: last.b().to_f64_lossy(),
            })
        }
    }

    fn tangent(&self, jet: &GraphJet<S>, prev: Option<[S; 2]>, sign: S) -> [S; 2] {
        let g = jet.grad_b();
        let n = norm(g);
        let mut t = [-g[1] / n * sign, g[0] / n * sign];
        if let Some(d) = prev {
            if t[0] * d[0] + t[1] * d[1] < S::zero() {
                t = [-t[0], -t[1]];
            }
        }
        t
    }

    fn inside(&self, p: [S; 2]) -> bool {
        self.f.domain().contains(p[0], p[1])
    }

    /// Corrected point at predictor length `s`, if it lands inside the domain.
    fn probe(&self, p: [S; 2], t: [S; 2], s: S) -> Option<([S; 2], GraphJet<S>)> {
        let q = [p[0] + s * t[0], p[1] + s * t[1]];
        match self.correct(q) {
            Ok((c, j)) if self.inside(c) => Some((c, j)),
            _ => None,
        }
    }

    fn march(
        &self,
        seed: [S; 2],
        seed_jet: GraphJet<S>,
        step: S,
        sign: S,
        budget: usize,
    ) -> Result<(Vec<[S; 2]>, bool), GraphError> {
        let mut pts = Vec::new();
        let (mut p, mut jet) = (seed, seed_jet);
        let mut dir: Option<[S; 2]> = None;
        while pts.len() < budget {
            let t = self.tangent(&jet, dir, sign);
            let q = [p[0] + step * t[0], p[1] + step * t[1]];
            // the predictor may overshoot the boundary while the corrected point does not
            let next = match self.correct(q) {
                Ok((c, j)) if self.inside(c) => Some((c, j)),
                Ok(_) | Err(GraphError::OutOfDomain { .. }) => None,
                // a locally inverted graph ends where inversion does
                Err(GraphError::InversionFailed { .. }) => None,
                Err(_) if !self.inside(q) => None,
                Err(e) => return Err(e),
            };
            let Some((c, j)) = next else {
                // clip to the boundary by bisection on the predictor length
                let (mut lo, mut hi) = (S::zero(), step);
                let mut best = None;
                for _ in 0..60 {
                    let mid = (lo + hi) / S::lit(2.0);
                    match self.probe(p, t, mid) {
                        Some(r) => {
                            lo = mid;
                            best = Some(r);
                        }
                        None => hi = mid,
                    }
                }
                if let Some((c, _)) = best {
                    if lo > step * S::lit(1e-6) {
                        pts.push(c);
                    }
                }
                return Ok((pts, false));
            };
            let gn = norm(j.grad_b());
            if !(gn > self.gradient) {
                return Err(self.degenerate(c, gn));
            }
            dir = Some([c[0] - p[0], c[1] - p[1]]);
            if pts.len() >= 10 && norm([c[0] - seed[0], c[1] - seed[1]]) < step / S::lit(2.0) {
                return Ok((pts, true));
            }
            pts.push(c);
            p = c;
            jet = j;
        }
        Ok((pts, false))
    }
}

/// Traces the type-change curve through `seed` with default tolerances.
pub fn trace_typechange_curve<S: Real>(
    f: &GraphFunction<S>,
    seed: [S; 2],
    step: S,
    max_points: usize,
) -> Result<Polyline<S>, GraphError> {
    trace_with(f, seed, step, max_points, ClassifyTolerances::default())
}

/// Traces `{B = 0}` both ways from `seed` until the domain boundary, closure
/// (back within `step / 2` of the seed after at least 10 steps) or `max_points`.
pub fn trace_with<S: Real>(
    f: &GraphFunction<S>,
    seed: [S; 2],
    step: S,
    max_points: usize,
    tol: ClassifyTolerances,
) -> Result<Polyline<S>, GraphError> {
    let tracer = Tracer {
        f,
        on_curve: S::lit(tol.on_curve),
        gradient: S::lit(tol.gradient),
    };
    let (seed, seed_jet) = tracer.correct(seed)?;
    let budget = max_points.max(1) - 1;
    let (fwd, closed) = tracer.march(seed, seed_jet, step, S::one(), budget)?;
    if closed {
        let mut points = vec![seed];
        points.extend(fwd);
        return Ok(Polyline {
            points,
            closed: true,
        });
    }
    let (bwd, _) = tracer.march(seed, seed_jet, step, -S::one(), budget - fwd.len())?;
    let mut points: Vec<[S; 2]> = bwd.into_iter().rev().collect();
    points.push(seed);
    points.extend(fwd);
    Ok(Polyline {
        points,
        closed: false,
    })
}

const LIFT_PANEL: f64 = 1.0;
const LIFT_NODES: usize = 32;

/// Longest prefix of the polyline on which `f` moves monotonically at unit
/// rate per arclength (cuts at branch jumps of multivalued graphs).
fn monotone_run<S: Real>(pts: &[[S; 2]], vals: &[S]) -> usize {
    let sign = (vals[1] - vals[0]).signum();
    let mut end = 1;
    while end + 1 < pts.len() {
        let df = vals[end + 1] - vals[end];
        let ds = norm([pts[end + 1][0] - pts[end][0], pts[end + 1][1] - pts[end][1]]);
        if df.signum() != sign || df.abs() > S::lit(2.0) * ds + S::lit(1e-12) {
            break;
        }
        end += 1;
    }
    end + 1
}

/// Null curve `t -> (t, x(t), y(t))` over the traced curve, parametrized by the
/// graph value `t = f(x, y)` (unit planar speed on `B = 0`).
pub fn null_lift_of_typechange<S: Real>(
    f: &GraphFunction<S>,
    polyline: &Polyline<S>,
) -> Result<AnalyticNullCurve<S>, GraphError> {
    let n = polyline.len();
    if n < 4 {
        return Err(GraphError::ShortPolyline(n));
    }
    let vals: Vec<S> = polyline
        .points
        .iter()
        .map(|p| f.value(p[0], p[1]))
        .collect::<Result<_, _>>()?;
    let run = monotone_run(&polyline.points, &vals);
    let (mut pts, mut fv) = (polyline.points[..run].to_vec(), vals[..run].to_vec());
    if fv[run - 1] < fv[0] {
        pts.reverse();
        fv.reverse();
    }
    let (t0, t1) = (fv[0], fv[run - 1]);
    if !(t1 - t0 > S::lit(1e-6)) {
        let p = pts[0];
        let j = f.jet(p[0], p[1])?;
        let g = j.grad_b();
        return Err(GraphError::DegenerateOnCurve {
            x: p[0].to_f64_lossy(),
            y: p[1].to_f64_lossy(),
            grad_b: norm(g).to_f64_lossy(),
        });
    }
    let panels = ((t1 - t0) / S::lit(LIFT_PANEL))
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    let solve = |t: S| -> Result<[S; 3], GraphError> {
        let k = fv.partition_point(|&v| v <= t).clamp(1, run - 1);
        let (a, b) = (fv[k - 1], fv[k]);
        let w = if b > a { (t - a) / (b - a) } else { S::zero() };
        let mut p = [
            pts[k - 1][0] + w * (pts[k][0] - pts[k - 1][0]),
            pts[k - 1][1] + w * (pts[k][1] - pts[k - 1][1]),
        ];
        for _ in 0..40 {
            let j = f.jet(p[0], p[1])?;
            let g = j.grad_b();
            let r = [j.b(), j.f - t];
            // rows: grad B, grad f
            let det = g[0] * j.fy - g[1] * j.fx;
            if !(det.abs() > S::lit(1e-14)) {
                return Err(GraphError::DegenerateOnCurve {
                    x: p[0].to_f64_lossy(),
                    y: p[1].to_f64_lossy(),
                    grad_b: norm(g).to_f64_lossy(),
                });
            }
            let dx = (r[0] * j.fy - g[1] * r[1]) / det;
            let dy = (g[0] * r[1] - j.fx * r[0]) / det;
            p = [p[0] - dx, p[1] - dy];
            if dx.abs().max(dy.abs()) <= S::epsilon() * S::lit(8.0) * (S::one() + norm(p)) {
                break;
            }
        }
        Ok([t, p[0], p[1]])
    };
    let mut values = Vec::with_capacity(panels);
    for p in 0..panels {
        let nodes = PiecewiseChebyshev::<S, 3>::lobatto_nodes(t0, t1, panels, LIFT_NODES, p);
        values.push(
            nodes
                .into_iter()
                .map(solve)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let table = PiecewiseChebyshev::from_lobatto_values(t0, t1, &values, 4);
    let strip = table.min_half_width() * S::lit(0.5);
    let curve = AnalyticNullCurve::new(
        Arc::new(ChebyshevCurve { table }),
        (t0, t1),
        strip,
        Validation {
            samples: 64,
            tol: 1e-8,
        },
    )?;
    for k in 0..64 {
        let u = t0 + (t1 - t0) * S::lit((k as f64 + 0.5) / 64.0);
        if !is_nondegenerate_at(&curve, u, S::lit(1e-8)) {
            let p = curve.point(u);
            return Err(GraphError::DegenerateOnCurve {
                x: p.x.to_f64_lossy(),
                y: p.y.to_f64_lossy(),
                grad_b: 0.0,
            });
        }
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CZero, HelicoidGraph, Plane, Rect, SZero};

    #[test]
    fn c_zero_trace_follows_cosh() {
        let f = GraphFunction::<f64>::from_source(CZero, Rect::new(-1.5, -4.0, 1.5, 4.0));
        let pl = trace_typechange_curve(&f, [0.0, 1.0], 2e-3, 100_000).unwrap();
        assert!(!pl.closed);
        for p in &pl.points {
            assert!((p[1] - p[0].cosh()).abs() < 1e-9);
        }
        let first = pl.points[0];
        let last = *pl.points.last().unwrap();
        assert!((first[0].abs() - 1.5).abs() < 1e-9 && (last[0].abs() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn helicoid_trace_closes_on_unit_circle() {
        let f = GraphFunction::<f64>::from_source(
            HelicoidGraph::default(),
            Rect::new(-2.0, -2.0, 2.0, 2.0),
        );
        let pl = trace_typechange_curve(&f, [1.0, 0.0], 2e-3, 100_000).unwrap();
        assert!(pl.closed);
        for p in &pl.points {
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn s_zero_trace_satisfies_tanh_identity() {
        let f = GraphFunction::<f64>::from_source(SZero, Rect::new(0.05, 0.05, 3.0, 3.0));
        let pl = trace_typechange_curve(&f, [1.0, 0.3], 2e-3, 100_000).unwrap();
        for p in &pl.points {
            let r = p[0].tanh().powi(2) + p[1].tanh().powi(2) - 1.0;
            assert!(r.abs() < 1e-8);
        }
    }

    #[test]
    fn degenerate_plane_is_rejected() {
        let f = GraphFunction::<f64>::from_source(Plane::new(1.0, 0.0, 0.0), Rect::everywhere());
        assert!(matches!(
            trace_typechange_curve(&f, [0.0, 0.0], 1e-2, 100),
            Err(GraphError::DegenerateOnCurve { .. })
        ));
        let pl = Polyline {
            points: (0..10).map(|k| [0.0, k as f64 * 0.1]).collect(),
            closed: false,
        };
        assert!(null_lift_of_typechange(&f, &pl).is_err());
    }

    #[test]
    fn helicoid_lift_is_the_helix() {
        let f = GraphFunction::<f64>::from_source(
            HelicoidGraph::default(),
            Rect::new(-2.0, -2.0, 2.0, 2.0),
        );
        let pl = trace_typechange_curve(&f, [1.0, 0.0], 2e-3, 100_000).unwrap();
        let g = null_lift_of_typechange(&f, &pl).unwrap();
        let (a, b) = g.domain();
        assert!(a.abs() < 1e-9 && b > 3.0);
        for k in 0..=40 {
            let t = a + (b - a) * k as f64 / 40.0;
            let p = g.point(t);
            assert!((p.x - t.cos()).abs() < 1e-9 && (p.y - t.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn c_zero_lift_passes_validation() {
        let f = GraphFunction::<f64>::from_source(CZero, Rect::new(-1.5, 0.0, 1.5, 4.0));
        let pl = trace_typechange_curve(&f, [0.0, 1.0], 2e-3, 100_000).unwrap();
        let g = null_lift_of_typechange(&f, &pl).unwrap();
        // t = sinh x along y = cosh x
        let p = g.point(0.5);
        assert!((p.x - 0.5f64.asinh()).abs() < 1e-10);
        assert!((p.y - 0.5f64.asinh().cosh()).abs() < 1e-10);
    }
}
