//! Planar curves, arclength reparametrization and the null lift `t -> (t, x(t), y(t))`.

use std::sync::Arc;

use num_complex::Complex;

use super::{AnalyticNullCurve, CurveError, CurveEvaluator, Validation};
use crate::cheb::PiecewiseChebyshev;
use crate::lorentz::ComplexVec3;
use crate::quad::gauss_legendre;
use crate::Real;

/// A real-analytic plane curve `sigma(u) = (x(u), y(u))` with complex evaluation.
pub trait PlanarCurve<S: Real>: Send + Sync {
    /// `order`-th derivative at complex `z`, `order <= 4`.
    fn derivative(&self, z: Complex<S>, order: usize) -> [Complex<S>; 2];
    fn domain(&self) -> (S, S);
    /// Caller's claim that the parameter is arclength.
    fn arclength_flag(&self) -> bool;
    fn strip_radius(&self) -> S;
    fn label(&self) -> String;

    fn point(&self, u: S) -> [S; 2] {
        let v = self.derivative(Complex::new(u, S::zero()), 0);
        [v[0].re, v[1].re]
    }

    fn real_derivative(&self, u: S, order: usize) -> [S; 2] {
        let v = self.derivative(Complex::new(u, S::zero()), order);
        [v[0].re, v[1].re]
    }

    fn speed(&self, u: S) -> S {
        let d = self.real_derivative(u, 1);
        d[0].hypot(d[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarShape<S> {
    /// `(R cos u, +-R sin u)`, angle parameter.
    Circle { radius: S, clockwise: bool },
    /// `(a cos u, b sin u)`.
    Ellipse { a: S, b: S },
    /// `(u, u^2)`.
    Parabola,
    /// `origin + u dir`.
    Line { origin: [S; 2], dir: [S; 2] },
}

/// Closed-form planar curve; entire, so the strip is a free choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPlanar<S> {
    pub shape: PlanarShape<S>,
    pub domain: (S, S),
    pub arclength_flag: bool,
    pub strip_radius: S,
}

impl<S: Real> AnalyticPlanar<S> {
    pub fn unit_circle(clockwise: bool) -> Self {
        Self {
            shape: PlanarShape::Circle {
                radius: S::one(),
                clockwise,
            },
            domain: (S::zero(), S::lit(std::f64::consts::TAU)),
            arclength_flag: true,
            strip_radius: S::one(),
        }
    }
}

fn trig_cycle<S: Real>(z: Complex<S>, order: usize) -> (Complex<S>, Complex<S>) {
    let (c, s) = (z.cos(), z.sin());
    match order % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

impl<S: Real> PlanarCurve<S> for AnalyticPlanar<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> [Complex<S>; 2] {
        let zero = Complex::new(S::zero(), S::zero());
        match self.shape {
            PlanarShape::Circle { radius, clockwise } => {
                let (c, s) = trig_cycle(z, order);
                let sign = if clockwise { -radius } else { radius };
                [c * radius, s * sign]
            }
            PlanarShape::Ellipse { a, b } => {
                let (c, s) = trig_cycle(z, order);
                [c * a, s * b]
            }
            PlanarShape::Parabola => match order {
                0 => [z, z * z],
                1 => [Complex::new(S::one(), S::zero()), z * S::lit(2.0)],
                2 => [zero, Complex::new(S::lit(2.0), S::zero())],
                _ => [zero, zero],
            },
            PlanarShape::Line { origin, dir } => match order {
                0 => [z * dir[0] + origin[0], z * dir[1] + origin[1]],
                1 => [
                    Complex::new(dir[0], S::zero()),
                    Complex::new(dir[1], S::zero()),
                ],
                _ => [zero, zero],
            },
        }
    }

    fn domain(&self) -> (S, S) {
        self.domain
    }

    fn arclength_flag(&self) -> bool {
        self.arclength_flag
    }

    fn strip_radius(&self) -> S {
        self.strip_radius
    }

    fn label(&self) -> String {
        format!("{:?}", self.shape)
    }
}

/// Planar curve backed by a piecewise Chebyshev table.
#[derive(Debug, Clone)]
pub struct ChebyshevPlanar<S> {
    pub table: PiecewiseChebyshev<S, 2>,
    pub arclength_flag: bool,
    pub strip_radius: S,
}

impl<S: Real> PlanarCurve<S> for ChebyshevPlanar<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> [Complex<S>; 2] {
        self.table.eval(z, order)
    }

    fn domain(&self) -> (S, S) {
        self.table.domain()
    }

    fn arclength_flag(&self) -> bool {
        self.arclength_flag
    }

    fn strip_radius(&self) -> S {
        self.strip_radius
    }

    fn label(&self) -> String {
        format!("chebyshev_planar({} panels)", self.table.panel_count())
    }
}

struct LiftedPlanar<S: Real> {
    sigma: Arc<dyn PlanarCurve<S>>,
}

impl<S: Real> CurveEvaluator<S> for LiftedPlanar<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let [x, y] = self.sigma.derivative(z, order);
        let t = match order {
            0 => z,
            1 => Complex::new(S::one(), S::zero()),
            _ => Complex::new(S::zero(), S::zero()),
        };
        ComplexVec3::new(t, x, y)
    }

    fn label(&self) -> String {
        format!("lift({})", self.sigma.label())
    }
}

const SPEED_TOL: f64 = 1e-8;

/// `t -> (t, x(t), y(t))` for an arclength-parametrized `sigma`.
pub fn lift_planar<S: Real>(
    sigma: Arc<dyn PlanarCurve<S>>,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    let (a, b) = sigma.domain();
    let n = 64;
    let tol = S::tol(SPEED_TOL, 64.0);
    for k in 0..n {
        let u = a + (b - a) * S::lit((k as f64 + 0.5) / n as f64);
        let speed = sigma.speed(u);
        if !sigma.arclength_flag() || !((speed - S::one()).abs() <= tol) {
            return Err(CurveError::NotArclength {
                u: u.to_f64_lossy(),
                speed: speed.to_f64_lossy(),
            });
        }
    }
    let strip = sigma.strip_radius();
    AnalyticNullCurve::new(
        Arc::new(LiftedPlanar { sigma }),
        (a, b),
        strip,
        Validation {
            samples: 64,
            tol: SPEED_TOL,
        },
    )
}

struct Arclength<'a, S: Real> {
    sigma: &'a dyn PlanarCurve<S>,
    a: S,
    step: S,
    cumulative: Vec<S>,
    rule: Vec<(S, S)>,
}

impl<S: Real> Arclength<'_, S> {
    fn partial(&self, lo: S, hi: S) -> S {
        let half = (hi - lo) / S::lit(2.0);
        let mid = (hi + lo) / S::lit(2.0);
        self.rule.iter().fold(S::zero(), |acc, &(x, w)| {
            acc + w * self.sigma.speed(mid + half * x)
        }) * half
    }

    fn length_to(&self, t: S) -> S {
        let m = self.cumulative.len() - 1;
        let k = ((t - self.a) / self.step)
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(m - 1);
        let lo = self.a + self.step * S::lit(k as f64);
        self.cumulative[k] + self.partial(lo, t)
    }

    /// Parameter at arclength `s` by table bracketing then Newton.
    fn invert(&self, s: S) -> S {
        let m = self.cumulative.len() - 1;
        let k = self.cumulative.partition_point(|&c| c <= s).clamp(1, m) - 1;
        let (c0, c1) = (self.cumulative[k], self.cumulative[k + 1]);
        let lo = self.a + self.step * S::lit(k as f64);
        let frac = if c1 > c0 {
            (s - c0) / (c1 - c0)
        } else {
            S::zero()
        };
        let mut t = lo + self.step * frac;
        for _ in 0..40 {
            let dt = (self.length_to(t) - s) / self.sigma.speed(t);
            t = t - dt;
            if dt.abs() <= S::epsilon() * S::lit(4.0) * (S::one() + t.abs()) {
                break;
            }
        }
        t
    }
}

/// Reparametrizes `sigma` by arclength on `[0, L]` and tabulates it with
/// `n_nodes` Chebyshev nodes in panels of 32.
pub fn arclength_reparametrize<S: Real>(
    sigma: &dyn PlanarCurve<S>,
    n_nodes: usize,
) -> Result<ChebyshevPlanar<S>, CurveError> {
    let n_nodes = n_nodes.max(16);
    let (a, b) = sigma.domain();
    let checks = n_nodes.max(64);
    for k in 0..=checks {
        let u = a + (b - a) * S::lit(k as f64 / checks as f64);
        let speed = sigma.speed(u);
        if !(speed > S::epsilon().sqrt() * S::lit(1e-4)) {
            return Err(CurveError::DegenerateCurve {
                u: u.to_f64_lossy(),
                speed: speed.to_f64_lossy(),
            });
        }
    }
    let m = n_nodes;
    let step = (b - a) / S::lit(m as f64);
    let mut arc = Arclength {
        sigma,
        a,
        step,
        cumulative: vec![S::zero()],
        rule: gauss_legendre(16),
    };
    for k in 0..m {
        let lo = a + step * S::lit(k as f64);
        let next = *arc.cumulative.last().unwrap() + arc.partial(lo, lo + step);
        arc.cumulative.push(next);
    }
    let total = arc.cumulative[m];
    let panels = n_nodes.div_ceil(32);
    let per_panel = (n_nodes / panels).max(16);
    let values: Vec<Vec<[S; 2]>> = (0..panels)
        .map(|p| {
            PiecewiseChebyshev::<S, 2>::lobatto_nodes(S::zero(), total, panels, per_panel, p)
                .into_iter()
                .map(|s| sigma.point(arc.invert(s)))
                .collect()
        })
        .collect();
    let table = PiecewiseChebyshev::from_lobatto_values(S::zero(), total, &values, 4);
    let strip = sigma
        .strip_radius()
        .min(table.min_half_width() * S::lit(0.3));
    Ok(ChebyshevPlanar {
        table,
        arclength_flag: true,
        strip_radius: strip,
    })
}
