//! Graphs `t = f(x, y)`: zero mean curvature residual, the type-change
//! function `B = 1 - |grad f|^2`, point classification, tracing of `{B = 0}`
//! and the null lift of the traced curve.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::curve::CurveError;
use crate::Real;

pub mod builtin;
pub mod trace;

pub use builtin::{CZero, HelicoidGraph, Plane, Quadratic, SZero};
pub use trace::{null_lift_of_typechange, trace_typechange_curve, Polyline, TraceOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("point ({x}, {y}) outside the graph domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("graph inversion failed at ({x}, {y}): {reason}")]
    InversionFailed { x: f64, y: f64, reason: String },
    #[error("type-change criteria disagree at ({x}, {y}): |grad B| = {grad_b:e}, 2 sqrt|det H| = {hess:e}")]
    CriteriaDisagree {
        x: f64,
        y: f64,
        grad_b: f64,
        hess: f64,
    },
    #[error("type change degenerates at ({x}, {y}): |grad B| = {grad_b:e}")]
    DegenerateOnCurve { x: f64, y: f64, grad_b: f64 },
    #[error("seed ({x}, {y}) does not converge onto B = 0 (|B| = {b:e})")]
    NotOnCurve { x: f64, y: f64, b: f64 },
    #[error("polyline too short for a null lift ({0} points)")]
    ShortPolyline(usize),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Value and derivatives of `f` up to order two.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GraphJet<S> {
    pub f: S,
    pub fx: S,
    pub fy: S,
    pub fxx: S,
    pub fxy: S,
    pub fyy: S,
}

impl<S: Real> GraphJet<S> {
    pub fn gradient(&self) -> [S; 2] {
        [self.fx, self.fy]
    }

    pub fn hessian_det(&self) -> S {
        self.fxx * self.fyy - self.fxy * self.fxy
    }

    /// `B = 1 - f_x^2 - f_y^2`.
    pub fn b(&self) -> S {
        S::one() - self.fx * self.fx - self.fy * self.fy
    }

    /// `grad B = -2 H grad f`.
    pub fn grad_b(&self) -> [S; 2] {
        let m2 = S::lit(-2.0);
        [
            m2 * (self.fxx * self.fx + self.fxy * self.fy),
            m2 * (self.fxy * self.fx + self.fyy * self.fy),
        ]
    }

    /// `(1 - f_y^2) f_xx + 2 f_x f_y f_xy + (1 - f_x^2) f_yy`.
    pub fn zmc_residual(&self) -> S {
        let two = S::lit(2.0);
        (S::one() - self.fy * self.fy) * self.fxx
            + two * self.fx * self.fy * self.fxy
            + (S::one() - self.fx * self.fx) * self.fyy
    }
}

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<S> {
    pub x0: S,
    pub y0: S,
    pub x1: S,
    pub y1: S,
}

impl<S: Real> Rect<S> {
    pub fn new(x0: S, y0: S, x1: S, y1: S) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn everywhere() -> Self {
        let inf = S::infinity();
        Self::new(-inf, -inf, inf, inf)
    }

    pub fn contains(&self, x: S, y: S) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }
}

/// Something that can evaluate a graph and its analytic 2-jet.
pub trait GraphSource<S: Real>: Send + Sync {
    fn value(&self, x: S, y: S) -> Result<S, GraphError>;
    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError>;
    fn label(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode<S> {
    Analytic,
    /// Central differences with one Richardson level.
    FiniteDifference {
        h: S,
    },
}

pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// `t = f(x, y)` on a rectangle, with analytic or finite-difference derivatives.
#[derive(Clone)]
pub struct GraphFunction<S: Real> {
    source: Arc<dyn GraphSource<S>>,
    mode: DerivativeMode<S>,
    domain: Rect<S>,
}

impl<S: Real> fmt::Debug for GraphFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphFunction")
            .field("source", &self.source.label())
            .field("mode", &self.mode)
            .field("domain", &self.domain)
            .finish()
    }
}

impl<S: Real> GraphFunction<S> {
    pub fn new(source: Arc<dyn GraphSource<S>>, domain: Rect<S>) -> Self {
        Self {
            source,
            mode: DerivativeMode::Analytic,
            domain,
        }
    }

    pub fn from_source(source: impl GraphSource<S> + 'static, domain: Rect<S>) -> Self {
        Self::new(Arc::new(source), domain)
    }

    /// Same graph with another derivative mode. Panics on a non-positive step.
    pub fn with_mode(&self, mode: DerivativeMode<S>) -> Self {
        if let DerivativeMode::FiniteDifference { h } = mode {
            assert!(h > S::zero(), "finite-difference step must be positive");
        }
        Self {
            source: self.source.clone(),
            mode,
            domain: self.domain,
        }
    }

    pub fn with_domain(&self, domain: Rect<S>) -> Self {
        Self {
            source: self.source.clone(),
            mode: self.mode,
            domain,
        }
    }

    pub fn finite_difference(&self, h: S) -> Self {
        self.with_mode(DerivativeMode::FiniteDifference { h })
    }

    pub fn mode(&self) -> DerivativeMode<S> {
        self.mode
    }

    pub fn domain(&self) -> Rect<S> {
        self.domain
    }

    pub fn label(&self) -> String {
        self.source.label()
    }

    fn check(&self, x: S, y: S) -> Result<(), GraphError> {
        if self.domain.contains(x, y) {
            Ok(())
        } else {
            Err(GraphError::OutOfDomain {
                x: x.to_f64_lossy(),
                y: y.to_f64_lossy(),
            })
        }
    }

    pub fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        self.check(x, y)?;
        self.source.value(x, y)
    }

    pub fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        self.check(x, y)?;
        self.jet_unchecked(x, y)
    }

    /// Jet without the domain check, for solver iterates that may briefly leave it.
    pub(crate) fn jet_unchecked(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        match self.mode {
            DerivativeMode::Analytic => self.source.jet(x, y),
            DerivativeMode::FiniteDifference { h } => {
                let coarse = self.fd_jet(x, y, h)?;
                let fine = self.fd_jet(x, y, h / S::lit(2.0))?;
                let r = |c: S, f: S| (S::lit(4.0) * f - c) / S::lit(3.0);
                Ok(GraphJet {
                    f: fine.f,
                    fx: r(coarse.fx, fine.fx),
                    fy: r(coarse.fy, fine.fy),
                    fxx: r(coarse.fxx, fine.fxx),
                    fxy: r(coarse.fxy, fine.fxy),
                    fyy: r(coarse.fyy, fine.fyy),
                })
            }
        }
    }

    fn fd_jet(&self, x: S, y: S, h: S) -> Result<GraphJet<S>, GraphError> {
        let v = |dx: S, dy: S| self.source.value(x + dx, y + dy);
        let z = S::zero();
        let two = S::lit(2.0);
        let f0 = v(z, z)?;
        let (fe, fw, fn_, fs) = (v(h, z)?, v(-h, z)?, v(z, h)?, v(z, -h)?);
        let (fne, fnw, fse, fsw) = (v(h, h)?, v(-h, h)?, v(h, -h)?, v(-h, -h)?);
        Ok(GraphJet {
            f: f0,
            fx: (fe - fw) / (two * h),
            fy: (fn_ - fs) / (two * h),
            fxx: (fe - two * f0 + fw) / (h * h),
            fyy: (fn_ - two * f0 + fs) / (h * h),
            fxy: (fne - fnw - fse + fsw) / (S::lit(4.0) * h * h),
        })
    }
}

/// Zero mean curvature residual at `(x, y)`.
pub fn zmc_residual<S: Real>(f: &GraphFunction<S>, x: S, y: S) -> Result<S, GraphError> {
    Ok(f.jet(x, y)?.zmc_residual())
}

/// `B` and `grad B = -2 H grad f` at `(x, y)`.
pub fn b_and_grad_b<S: Real>(f: &GraphFunction<S>, x: S, y: S) -> Result<(S, [S; 2]), GraphError> {
    let j = f.jet(x, y)?;
    Ok((j.b(), j.grad_b()))
}

/// Thresholds for "on the curve" and "non-degenerate".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyTolerances {
    pub on_curve: f64,
    pub gradient: f64,
}

impl Default for ClassifyTolerances {
    fn default() -> Self {
        Self {
            on_curve: 1e-10,
            gradient: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeChangePoint<S> {
    pub x: S,
    pub y: S,
    pub b: S,
    pub grad_b: [S; 2],
    pub hessian_det: S,
    pub on_curve: bool,
    pub nondegenerate: bool,
}

/// On `B = 0` a zero mean curvature graph has `det H = -|grad B|^2 / 4`, so
/// `2 sqrt|det H|` is the Hessian-side quantity on the same scale as `|grad B|`.
pub fn hessian_scale<S: Real>(det: S) -> S {
    S::lit(2.0) * det.abs().sqrt()
}

/// Evaluates both non-degeneracy criteria and checks that they agree on `B = 0`.
pub fn classify_point<S: Real>(
    f: &GraphFunction<S>,
    x: S,
    y: S,
    tol: ClassifyTolerances,
) -> Result<TypeChangePoint<S>, GraphError> {
    let j = f.jet(x, y)?;
    let b = j.b();
    let g = j.grad_b();
    let det = j.hessian_det();
    let on_curve = b.abs() <= S::lit(tol.on_curve);
    let gtol = S::lit(tol.gradient);
    let grad_norm = g[0].hypot(g[1]);
    let by_gradient = grad_norm > gtol;
    let by_hessian = hessian_scale(det) > gtol;
    if on_curve && by_gradient != by_hessian {
        return Err(GraphError::CriteriaDisagree {
            x: x.to_f64_lossy(),
            y: y.to_f64_lossy(),
            grad_b: grad_norm.to_f64_lossy(),
            hess: hessian_scale(det).to_f64_lossy(),
        });
    }
    Ok(TypeChangePoint {
        x,
        y,
        b,
        grad_b: g,
        hessian_det: det,
        on_curve,
        nondegenerate: on_curve && by_gradient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c0() -> GraphFunction<f64> {
        GraphFunction::<f64>::from_source(CZero, Rect::everywhere())
    }

    fn s0() -> GraphFunction<f64> {
        GraphFunction::<f64>::from_source(SZero, Rect::everywhere())
    }

    #[test]
    fn residual_examples() {
        for &(x, y) in &[(0.3, -1.2), (1.4, 2.0), (-2.0, 0.1)] {
            assert!(zmc_residual(&c0(), x, y).unwrap().abs() < 1e-12);
            assert!(zmc_residual(&s0(), x, y).unwrap().abs() < 1e-12);
        }
        let paraboloid = GraphFunction::<f64>::from_source(
            Quadratic::new(0.0, [0.0, 0.0], [2.0, 0.0, 2.0]),
            Rect::everywhere(),
        );
        assert!((zmc_residual(&paraboloid, 0.0, 0.0).unwrap() - 4.0).abs() < 1e-14);
        let (x, y) = (0.3, -0.2);
        let want = 2.0 * (1.0 - 4.0 * y * y) + 2.0 * (1.0 - 4.0 * x * x);
        assert!((zmc_residual(&paraboloid, x, y).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn b_examples() {
        let (b, g) = b_and_grad_b(&c0(), 0.0, 0.0).unwrap();
        assert_eq!((b, g), (1.0, [0.0, 0.0]));
        for &x in &[-1.0f64, 0.0, 0.7] {
            let (b, _) = b_and_grad_b(&c0(), x, x.cosh()).unwrap();
            assert!(b.abs() < 1e-15);
        }
        let plane =
            GraphFunction::<f64>::from_source(Plane::new(1.0, 0.0, 0.0), Rect::everywhere());
        assert_eq!(b_and_grad_b(&plane, 0.4, 9.0).unwrap(), (0.0, [0.0, 0.0]));
    }

    #[test]
    fn grad_b_identity_against_direct_differences() {
        let f = c0();
        let (x, y) = (0.4, 1.3);
        let bd = |h: f64| {
            let b = |x: f64, y: f64| f.jet(x, y).unwrap().b();
            [
                (b(x + h, y) - b(x - h, y)) / (2.0 * h),
                (b(x, y + h) - b(x, y - h)) / (2.0 * h),
            ]
        };
        let (_, g) = b_and_grad_b(&f, x, y).unwrap();
        let err = |h| {
            let d = bd(h);
            (d[0] - g[0]).hypot(d[1] - g[1])
        };
        let (e1, e2) = (err(1e-2), err(5e-3));
        assert!(e1 / e2 >= 3.5, "{e1:e} {e2:e}");
    }

    #[test]
    fn classification_examples() {
        let p = classify_point(&c0(), 0.0, 1.0, ClassifyTolerances::default()).unwrap();
        assert!(p.on_curve && p.nondegenerate && p.hessian_det != 0.0);
        let plane =
            GraphFunction::<f64>::from_source(Plane::new(1.0, 0.0, 0.0), Rect::everywhere());
        let p = classify_point(&plane, 0.2, 0.3, ClassifyTolerances::default()).unwrap();
        assert!(p.on_curve && !p.nondegenerate);
        // root of tanh^2 x + tanh^2 y = 1 at x = 1 by bisection
        let target = 1.0 - 1f64.tanh().powi(2);
        let (mut lo, mut hi) = (0.0f64, 5.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.tanh().powi(2) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p = classify_point(&s0(), 1.0, 0.5 * (lo + hi), ClassifyTolerances::default()).unwrap();
        assert!(p.on_curve && p.nondegenerate);
    }

    #[test]
    fn finite_difference_mode_tracks_analytic() {
        let f = c0().finite_difference(1e-3);
        let a = c0().jet(0.3, 0.8).unwrap();
        let n = f.jet(0.3, 0.8).unwrap();
        for (p, q) in [
            (a.fx, n.fx),
            (a.fy, n.fy),
            (a.fxx, n.fxx),
            (a.fxy, n.fxy),
            (a.fyy, n.fyy),
        ] {
            assert!((p - q).abs() < 1e-8);
        }
        assert!(
            zmc_residual(&c0().finite_difference(1e-4), 0.3, 0.8)
                .unwrap()
                .abs()
                < 1e-6
        );
    }

    #[test]
    fn metric_sign_matches_b() {
        // induced metric det on the graph of f equals B
        use crate::lorentz::{minkowski_inner, LorentzVec3};
        let f = c0();
        for &(x, y) in &[(0.0, 0.5), (0.5, 3.0), (-1.0, 1.2)] {
            let j = f.jet(x, y).unwrap();
            let ex = LorentzVec3::new(j.fx, 1.0, 0.0);
            let ey = LorentzVec3::new(j.fy, 0.0, 1.0);
            let det = minkowski_inner(&ex, &ex) * minkowski_inner(&ey, &ey)
                - minkowski_inner(&ex, &ey).powi(2);
            assert!((det - j.b()).abs() < 1e-13);
        }
    }

    #[test]
    fn out_of_domain_is_reported() {
        let f = GraphFunction::<f64>::from_source(CZero, Rect::new(0.0, 0.0, 1.0, 1.0));
        assert!(matches!(
            f.value(2.0, 0.5),
            Err(GraphError::OutOfDomain { .. })
        ));
    }
}
