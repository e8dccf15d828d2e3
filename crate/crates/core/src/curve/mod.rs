//! Real-analytic null curves with complex evaluation on a strip.
//!
//! A curve is any [`CurveEvaluator`] wrapped in an [`AnalyticNullCurve`] after
//! sample-based validation of reality, nullity and regularity. Closed forms
//! live in [`builtin`], coefficient tables in [`table`] and planar curves with
//! their lift in [`planar`].

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use thiserror::Error;

use crate::lorentz::{minkowski_inner, ComplexVec3, LorentzVec3};
use crate::Real;

pub mod builtin;
pub mod planar;
pub mod table;

pub use builtin::{
    by_name, helix, hyperbolic_alpha, hyperbolic_beta, light_line, parabolic_directrix,
    reparametrized, scherk_null, Helix, Hyperbolic, LightLine, ParabolicDirectrix,
    QuadraticReparam, ScherkNull, BUILTIN_NAMES,
};
pub use planar::{
    arclength_reparametrize, lift_planar, AnalyticPlanar, ChebyshevPlanar, PlanarCurve, PlanarShape,
};
pub use table::{ChebyshevCurve, TaylorSegment, TaylorSegments};

/// Highest derivative order every evaluator must provide.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("strip radius must be positive and finite, got {0}")]
    InvalidStrip(f64),
    #[error("domain ({0}, {1}) is empty or not finite")]
    InvalidDomain(f64, f64),
    #[error("reality violated at u = {u}: deviation {deviation:e}")]
    RealityViolation { u: f64, deviation: f64 },
    #[error("nullity violated at u = {u}: <g', g'> = {value:e}")]
    NullityViolation { u: f64, value: f64 },
    #[error("regularity violated at u = {u}: |g'| = {speed:e}")]
    RegularityViolation { u: f64, speed: f64 },
    #[error("planar curve is not parametrized by arclength (speed {speed} at u = {u})")]
    NotArclength { u: f64, speed: f64 },
    #[error("planar curve degenerates at u = {u} (|sigma'| = {speed:e})")]
    DegenerateCurve { u: f64, speed: f64 },
}

/// Complex-analytic map `z -> gamma^(order)(z)` into C^3.
pub trait CurveEvaluator<S: Real>: Send + Sync {
    /// `order`-th derivative at `z`, `order <= MAX_ORDER`; order 0 is the value.
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S>;

    fn label(&self) -> String {
        "custom".to_string()
    }
}

/// Adapter turning a pair of closures into a [`CurveEvaluator`].
pub struct FnCurve<E, D> {
    pub evaluator: E,
    pub derivative_evaluator: D,
}

impl<S, E, D> CurveEvaluator<S> for FnCurve<E, D>
where
    S: Real,
    E: Fn(Complex<S>) -> ComplexVec3<S> + Send + Sync,
    D: Fn(Complex<S>, usize) -> ComplexVec3<S> + Send + Sync,
{
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        if order == 0 {
            (self.evaluator)(z)
        } else {
            (self.derivative_evaluator)(z, order)
        }
    }
}

/// Sample-based validation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validation {
    pub samples: usize,
    pub tol: f64,
}

impl Default for Validation {
    fn default() -> Self {
        Self {
            samples: 64,
            tol: 1e-10,
        }
    }
}

/// A validated real-analytic null curve `gamma: (a, b) -> R^3_1`.
#[derive(Clone)]
pub struct AnalyticNullCurve<S: Real> {
    evaluator: Arc<dyn CurveEvaluator<S>>,
    domain: (S, S),
    strip_radius: S,
}

impl<S: Real> fmt::Debug for AnalyticNullCurve<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticNullCurve")
            .field("label", &self.evaluator.label())
            .field("domain", &self.domain)
            .field("strip_radius", &self.strip_radius)
            .finish()
    }
}

fn c<S: Real>(re: S, im: S) -> Complex<S> {
    Complex::new(re, im)
}

impl<S: Real> AnalyticNullCurve<S> {
    /// Validates `evaluator` on `domain` and wraps it.
    pub fn new(
        evaluator: Arc<dyn CurveEvaluator<S>>,
        domain: (S, S),
        strip_radius: S,
        validation: Validation,
    ) -> Result<Self, CurveError> {
        if !(strip_radius > S::zero()) || !strip_radius.is_finite() {
            return Err(CurveError::InvalidStrip(strip_radius.to_f64_lossy()));
        }
        let (a, b) = domain;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(CurveError::InvalidDomain(
                a.to_f64_lossy(),
                b.to_f64_lossy(),
            ));
        }
        let curve = Self {
            evaluator,
            domain,
            strip_radius,
        };
        curve.validate(validation)?;
        Ok(curve)
    }

    fn validate(&self, v: Validation) -> Result<(), CurveError> {
        let tol = S::tol(v.tol, 256.0);
        let n = v.samples.max(1);
        let (a, b) = self.domain;
        let half_strip = self.strip_radius / S::lit(2.0);
        for k in 0..n {
            let u = a + (b - a) * S::lit((k as f64 + 0.5) / n as f64);
            let val = self.evaluator.derivative(c(u, S::zero()), 0);
            let scale = S::one() + val.re().euclid_norm();
            let dev = val.im().euclid_norm();
            // Schwarz reflection just inside the declared strip
            let up = self.evaluator.derivative(c(u, half_strip), 0);
            let down = self.evaluator.derivative(c(u, -half_strip), 0);
            let refl = (up.conj() - down).norm();
            let refl_scale = S::one() + up.norm();
            if !(dev <= tol * scale) || !(refl <= tol * refl_scale) {
                return Err(CurveError::RealityViolation {
                    u: u.to_f64_lossy(),
                    deviation: dev.max(refl).to_f64_lossy(),
                });
            }
            let vel = self.evaluator.derivative(c(u, S::zero()), 1).re();
            let speed = vel.euclid_norm();
            if !(speed > tol) {
                return Err(CurveError::RegularityViolation {
                    u: u.to_f64_lossy(),
                    speed: speed.to_f64_lossy(),
                });
            }
            let q = minkowski_inner(&vel, &vel);
            if !(q.abs() <= tol * (S::one() + speed * speed)) {
                return Err(CurveError::NullityViolation {
                    u: u.to_f64_lossy(),
                    value: q.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> (S, S) {
        self.domain
    }

    pub fn strip_radius(&self) -> S {
        self.strip_radius
    }

    pub fn label(&self) -> String {
        self.evaluator.label()
    }

    pub fn evaluator(&self) -> &Arc<dyn CurveEvaluator<S>> {
        &self.evaluator
    }

    pub fn contains(&self, u: S) -> bool {
        u >= self.domain.0 && u <= self.domain.1
    }

    /// `gamma(z)` for complex `z`.
    #[inline]
    pub fn eval(&self, z: Complex<S>) -> ComplexVec3<S> {
        self.evaluator.derivative(z, 0)
    }

    /// `gamma^(order)(z)`. Panics if `order > MAX_ORDER`.
    #[inline]
    pub fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        assert!(
            order <= MAX_ORDER,
            "curve derivative order {order} > {MAX_ORDER}"
        );
        self.evaluator.derivative(z, order)
    }

    /// Real point `gamma(u)`.
    pub fn point(&self, u: S) -> LorentzVec3<S> {
        self.eval(c(u, S::zero())).re()
    }

    /// Real derivative `gamma^(order)(u)`.
    pub fn real_derivative(&self, u: S, order: usize) -> LorentzVec3<S> {
        self.derivative(c(u, S::zero()), order).re()
    }

    /// Same evaluator on a sub-interval, without revalidation.
    pub fn restricted(&self, a: S, b: S) -> Self {
        Self {
            evaluator: self.evaluator.clone(),
            domain: (a.max(self.domain.0), b.min(self.domain.1)),
            strip_radius: self.strip_radius,
        }
    }
}

/// Builds and validates a curve from an evaluator and a derivative evaluator.
pub fn make_curve_from_evaluators<S, E, D>(
    evaluator: E,
    derivative_evaluator: D,
    domain: (S, S),
    strip_radius: S,
    validation: Validation,
) -> Result<AnalyticNullCurve<S>, CurveError>
where
    S: Real,
    E: Fn(Complex<S>) -> ComplexVec3<S> + Send + Sync + 'static,
    D: Fn(Complex<S>, usize) -> ComplexVec3<S> + Send + Sync + 'static,
{
    AnalyticNullCurve::new(
        Arc::new(FnCurve {
            evaluator,
            derivative_evaluator,
        }),
        domain,
        strip_radius,
        validation,
    )
}

/// True iff `gamma''(u)` is not proportional to `gamma'(u)`.
pub fn is_nondegenerate_at<S: Real>(curve: &AnalyticNullCurve<S>, u: S, tol: S) -> bool {
    let d1 = curve.real_derivative(u, 1);
    let d2 = curve.real_derivative(u, 2);
    let minors = [
        d1.t * d2.x - d1.x * d2.t,
        d1.t * d2.y - d1.y * d2.t,
        d1.x * d2.y - d1.y * d2.x,
    ];
    let bound = tol * (d1.euclid_norm() * d2.euclid_norm() + S::one());
    minors.iter().any(|m| m.abs() > bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn accepts_alpha_and_helix_from_closures() {
        let alpha = make_curve_from_evaluators(
            |z: C| ComplexVec3::new(z.sinh(), z, z.cosh()),
            |z: C, k| {
                let one = C::new(1.0, 0.0);
                let zero = C::new(0.0, 0.0);
                match k {
                    1 => ComplexVec3::new(z.cosh(), one, z.sinh()),
                    _ if k % 2 == 0 => ComplexVec3::new(z.sinh(), zero, z.cosh()),
                    _ => ComplexVec3::new(z.cosh(), zero, z.sinh()),
                }
            },
            (-2.0, 2.0),
            0.5,
            Validation::default(),
        );
        assert!(alpha.is_ok());
        let helix = make_curve_from_evaluators(
            |z: C| ComplexVec3::new(z, z.cos(), z.sin()),
            |z: C, k| {
                let zero = C::new(0.0, 0.0);
                let t = if k == 1 { C::new(1.0, 0.0) } else { zero };
                let (x, y) = match k % 4 {
                    1 => (-z.sin(), z.cos()),
                    2 => (-z.cos(), -z.sin()),
                    3 => (z.sin(), -z.cos()),
                    _ => (z.cos(), z.sin()),
                };
                ComplexVec3::new(t, x, y)
            },
            (0.0, std::f64::consts::TAU),
            0.5,
            Validation::default(),
        );
        assert!(helix.is_ok());
    }

    #[test]
    fn rejects_non_null_diagonal() {
        let r = make_curve_from_evaluators(
            |z: C| ComplexVec3::new(z, z, z),
            |_z: C, k| {
                let v = C::new(if k == 1 { 1.0 } else { 0.0 }, 0.0);
                ComplexVec3::new(v, v, v)
            },
            (-1.0, 1.0),
            0.5,
            Validation::default(),
        );
        assert!(matches!(r, Err(CurveError::NullityViolation { .. })));
    }

    #[test]
    fn rejects_non_real_and_stationary_curves() {
        let i = C::new(0.0, 1.0);
        let r = make_curve_from_evaluators(
            move |z: C| ComplexVec3::new(z + i, z, C::new(0.0, 0.0)),
            |_z: C, k| {
                let v = C::new(if k == 1 { 1.0 } else { 0.0 }, 0.0);
                ComplexVec3::new(v, v, C::new(0.0, 0.0))
            },
            (-1.0, 1.0),
            0.5,
            Validation::default(),
        );
        assert!(matches!(r, Err(CurveError::RealityViolation { .. })));
        let r = make_curve_from_evaluators(
            |_z: C| ComplexVec3::zero(),
            |_z: C, _k| ComplexVec3::zero(),
            (-1.0, 1.0),
            0.5,
            Validation::default(),
        );
        assert!(matches!(r, Err(CurveError::RegularityViolation { .. })));
    }

    #[test]
    fn bad_strip_or_domain() {
        let e = |z: C| ComplexVec3::new(z, z, C::new(0.0, 0.0));
        let d = |_z: C, _k: usize| ComplexVec3::zero();
        assert!(matches!(
            make_curve_from_evaluators(e, d, (0.0, 1.0), 0.0, Validation::default()),
            Err(CurveError::InvalidStrip(_))
        ));
        assert!(matches!(
            make_curve_from_evaluators(e, d, (1.0, 0.0), 1.0, Validation::default()),
            Err(CurveError::InvalidDomain(..))
        ));
    }

    #[test]
    fn nondegeneracy_examples() {
        let alpha = hyperbolic_alpha::<f64>((-2.0, 2.0), 0.5).unwrap();
        assert!(is_nondegenerate_at(&alpha, 0.0, 1e-10));
        let h = helix::<f64>(1.0, false, (0.0, 6.0), 0.5).unwrap();
        for k in 0..20 {
            assert!(is_nondegenerate_at(&h, 0.3 * k as f64, 1e-10));
        }
        let line = light_line::<f64>((-1.0, 1.0), 1.0).unwrap();
        assert!(!is_nondegenerate_at(&line, 0.2, 1e-10));
    }
}
