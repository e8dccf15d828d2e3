//! Closed-form null curves with analytic derivatives.

use std::sync::Arc;

use num_complex::Complex;

use super::{AnalyticNullCurve, CurveError, CurveEvaluator, Validation};
use crate::lorentz::ComplexVec3;
use crate::Real;

fn k<S: Real>(x: f64) -> Complex<S> {
    Complex::new(S::lit(x), S::zero())
}

/// `(z, R cos(z/R), +-R sin(z/R))`; clockwise flips the sign of the last slot.
#[derive(Debug, Clone, Copy)]
pub struct Helix<S> {
    pub radius: S,
    pub clockwise: bool,
}

impl<S: Real> CurveEvaluator<S> for Helix<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let r = self.radius;
        let th = z / r;
        let (c, s) = (th.cos(), th.sin());
        let scale = r * r.powi(-(order as i32));
        let (x, y) = match order % 4 {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        };
        let t = match order {
            0 => z,
            1 => k(1.0),
            _ => k(0.0),
        };
        let sign = if self.clockwise { -S::one() } else { S::one() };
        ComplexVec3::new(t, x * scale, y * scale * sign)
    }

    fn label(&self) -> String {
        format!("helix(r={}, clockwise={})", self.radius, self.clockwise)
    }
}

/// `(t_sign sinh z, z, y_sign cosh z)`. `(+,+)` is alpha, `(+,-)` is beta.
#[derive(Debug, Clone, Copy)]
pub struct Hyperbolic<S> {
    pub t_sign: S,
    pub y_sign: S,
}

impl<S: Real> CurveEvaluator<S> for Hyperbolic<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let (sh, ch) = (z.sinh(), z.cosh());
        let (t, x, y) = match order {
            0 => (sh, z, ch),
            1 => (ch, k(1.0), sh),
            n if n % 2 == 0 => (sh, k(0.0), ch),
            _ => (ch, k(0.0), sh),
        };
        ComplexVec3::new(t * self.t_sign, x, y * self.y_sign)
    }

    fn label(&self) -> String {
        format!("hyperbolic(t_sign={}, y_sign={})", self.t_sign, self.y_sign)
    }
}

/// `(-z - z^3/3, -z + z^3/3, -z^2)`, the directrix of the parabolic helicoid.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParabolicDirectrix;

impl<S: Real> CurveEvaluator<S> for ParabolicDirectrix {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let z2 = z * z;
        let third = S::lit(1.0 / 3.0);
        match order {
            0 => ComplexVec3::new(-z - z2 * z * third, -z + z2 * z * third, -z2),
            1 => ComplexVec3::new(-k::<S>(1.0) - z2, -k::<S>(1.0) + z2, -z * S::lit(2.0)),
            2 => ComplexVec3::new(-z * S::lit(2.0), z * S::lit(2.0), k(-2.0)),
            3 => ComplexVec3::new(k(-2.0), k(2.0), k(0.0)),
            _ => ComplexVec3::zero(),
        }
    }

    fn label(&self) -> String {
        "parabolic_directrix".to_string()
    }
}

/// `(log cot z, log tan(z/2), atanh(sin z))` on `(0, pi/2)`: the fold curve of
/// the conjugate Scherk surface.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScherkNull;

impl<S: Real> CurveEvaluator<S> for ScherkNull {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let two = S::lit(2.0);
        if order == 0 {
            let t = (z.cos() / z.sin()).ln();
            let x = (z / two).tan().ln();
            let y = z.sin().atanh();
            return ComplexVec3::new(t, x, y);
        }
        let one = k::<S>(1.0);
        let (c, kk) = (one / z.sin(), z.cos() / z.sin());
        let (s, tt) = (one / z.cos(), z.tan());
        let z2 = z * two;
        let (cc, kc) = (one / z2.sin(), z2.cos() / z2.sin());
        let five = S::lit(5.0);
        match order {
            1 => ComplexVec3::new(cc * S::lit(-2.0), c, s),
            2 => ComplexVec3::new(cc * kc * S::lit(4.0), -c * kk, s * tt),
            3 => ComplexVec3::new(
                (cc * kc * kc + cc * cc * cc) * S::lit(-8.0),
                c * kk * kk + c * c * c,
                s * tt * tt + s * s * s,
            ),
            _ => ComplexVec3::new(
                (cc * kc * kc * kc + cc * cc * cc * kc * five) * S::lit(16.0),
                -c * kk * kk * kk - c * c * c * kk * five,
                s * tt * tt * tt + s * s * s * tt * five,
            ),
        }
    }

    fn label(&self) -> String {
        "scherk_null".to_string()
    }
}

/// `(z, z, 0)`: null but degenerate everywhere.
#[derive(Debug, Clone, Copy, Default)]
pub struct LightLine;

impl<S: Real> CurveEvaluator<S> for LightLine {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        match order {
            0 => ComplexVec3::new(z, z, k(0.0)),
            1 => ComplexVec3::new(k(1.0), k(1.0), k(0.0)),
            _ => ComplexVec3::zero(),
        }
    }

    fn label(&self) -> String {
        "light_line".to_string()
    }
}

/// `gamma(f(z))` with `f(z) = z + a z^2`, derivatives by Faa di Bruno.
pub struct QuadraticReparam<S: Real> {
    pub base: Arc<dyn CurveEvaluator<S>>,
    pub a: S,
}

impl<S: Real> CurveEvaluator<S> for QuadraticReparam<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let w = z + z * z * self.a;
        let f1 = k::<S>(1.0) + z * (self.a * S::lit(2.0));
        let f2 = k::<S>(2.0) * self.a;
        let g = |m| self.base.derivative(w, m);
        match order {
            0 => g(0),
            1 => g(1).scale(f1),
            2 => g(2).scale(f1 * f1) + g(1).scale(f2),
            3 => g(3).scale(f1 * f1 * f1) + g(2).scale(f1 * f2 * S::lit(3.0)),
            _ => {
                g(4).scale(f1 * f1 * f1 * f1)
                    + g(3).scale(f1 * f1 * f2 * S::lit(6.0))
                    + g(2).scale(f2 * f2 * S::lit(3.0))
            }
        }
    }

    fn label(&self) -> String {
        format!("{} o (z + {} z^2)", self.base.label(), self.a)
    }
}

fn wrap<S: Real>(
    e: Arc<dyn CurveEvaluator<S>>,
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    AnalyticNullCurve::new(e, domain, strip, Validation::default())
}

pub fn helix<S: Real>(
    radius: S,
    clockwise: bool,
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(Arc::new(Helix { radius, clockwise }), domain, strip)
}

/// alpha(u) = (sinh u, u, cosh u).
pub fn hyperbolic_alpha<S: Real>(
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(
        Arc::new(Hyperbolic {
            t_sign: S::one(),
            y_sign: S::one(),
        }),
        domain,
        strip,
    )
}

/// beta(v) = (sinh v, v, -cosh v).
pub fn hyperbolic_beta<S: Real>(
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(
        Arc::new(Hyperbolic {
            t_sign: S::one(),
            y_sign: -S::one(),
        }),
        domain,
        strip,
    )
}

pub fn parabolic_directrix<S: Real>(
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(Arc::new(ParabolicDirectrix), domain, strip)
}

/// Domain must lie inside `(0, pi/2)` and the strip must stay clear of the endpoints.
pub fn scherk_null<S: Real>(domain: (S, S), strip: S) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(Arc::new(ScherkNull), domain, strip)
}

pub fn light_line<S: Real>(domain: (S, S), strip: S) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(Arc::new(LightLine), domain, strip)
}

/// `gamma o f` with `f(z) = z + a z^2`, on the preimage of `curve`'s domain
/// restricted to `domain` (caller keeps `f` monotone there).
pub fn reparametrized<S: Real>(
    curve: &AnalyticNullCurve<S>,
    a: S,
    domain: (S, S),
    strip: S,
) -> Result<AnalyticNullCurve<S>, CurveError> {
    wrap(
        Arc::new(QuadraticReparam {
            base: curve.evaluator().clone(),
            a,
        }),
        domain,
        strip,
    )
}

/// Looks up a builtin by name with its natural domain and strip.
pub fn by_name(name: &str) -> Option<AnalyticNullCurve<f64>> {
    use std::f64::consts::{FRAC_PI_2, TAU};
    match name {
        "helix" | "circle_lift" => helix(1.0, false, (0.0, TAU), 1.0).ok(),
        "helix_clockwise" => helix(1.0, true, (0.0, TAU), 1.0).ok(),
        "alpha" => hyperbolic_alpha((-2.0, 2.0), 1.0).ok(),
        "beta" => hyperbolic_beta((-2.0, 2.0), 1.0).ok(),
        "parabolic_directrix" => parabolic_directrix((-1.5, 1.5), 1.0).ok(),
        "scherk_null" => scherk_null((0.2, FRAC_PI_2 - 0.2), 0.15).ok(),
        "light_line" => light_line((-1.0, 1.0), 1.0).ok(),
        _ => None,
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "helix",
    "helix_clockwise",
    "alpha",
    "beta",
    "parabolic_directrix",
    "scherk_null",
    "light_line",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::is_nondegenerate_at;
    use crate::quad::gauss_legendre;

    type C = Complex<f64>;

    /// Derivatives by the Cauchy integral on a small circle, independent of the
    /// closed forms above.
    fn cauchy(e: &dyn CurveEvaluator<f64>, z: C, order: usize) -> ComplexVec3<f64> {
        let n = 128;
        let r = 0.15;
        let mut acc = ComplexVec3::zero();
        for j in 0..n {
            let th = std::f64::consts::TAU * j as f64 / n as f64;
            let e_ith = C::from_polar(1.0, th);
            let w = e.derivative(z + e_ith * r, 0);
            acc += w.scale(e_ith.powi(-(order as i32)));
        }
        let fact: f64 = (1..=order).map(|k| k as f64).product();
        acc.scale_real(fact / (n as f64 * r.powi(order as i32)))
    }

    fn check_against_cauchy(e: &dyn CurveEvaluator<f64>, pts: &[C], tol: f64) {
        for &z in pts {
            for m in 1..=4 {
                let got = e.derivative(z, m);
                let want = cauchy(e, z, m);
                let err = (got - want).norm() / (1.0 + want.norm());
                assert!(err < tol, "{} order {m} at {z}: {err:e}", e.label());
            }
        }
    }

    #[test]
    fn closed_form_derivatives_match_cauchy_integrals() {
        let pts = [C::new(0.3, 0.0), C::new(0.7, 0.08), C::new(1.1, -0.05)];
        check_against_cauchy(&ScherkNull, &pts, 1e-10);
        check_against_cauchy(&ParabolicDirectrix, &pts, 1e-10);
        check_against_cauchy(
            &Hyperbolic {
                t_sign: 1.0,
                y_sign: -1.0,
            },
            &pts,
            1e-10,
        );
        check_against_cauchy(
            &Helix {
                radius: 2.0,
                clockwise: true,
            },
            &pts,
            1e-10,
        );
        let rep = QuadraticReparam {
            base: Arc::new(Hyperbolic {
                t_sign: 1.0,
                y_sign: 1.0,
            }),
            a: 0.1,
        };
        check_against_cauchy(&rep, &pts, 1e-10);
    }

    #[test]
    fn scherk_null_value_matches_logarithmic_form() {
        let u: f64 = 0.6;
        let g = ScherkNull.derivative(C::new(u, 0.0), 0).re();
        assert!((g.t - (1.0 / u.tan()).ln()).abs() < 1e-14);
        assert!((g.x - 0.5 * ((1.0 - u.cos()) / (1.0 + u.cos())).ln()).abs() < 1e-14);
        assert!((g.y - 0.5 * ((1.0 + u.sin()) / (1.0 - u.sin())).ln()).abs() < 1e-14);
        // integrated velocity reproduces the increment
        let rule = gauss_legendre::<f64>(20);
        let (a, b) = (0.4, 1.0);
        let half = (b - a) / 2.0;
        let mut acc = [0.0; 3];
        for &(x, w) in &rule {
            let d = ScherkNull
                .derivative(C::new(a + half * (x + 1.0), 0.0), 1)
                .re();
            for (s, v) in acc.iter_mut().zip(d.to_array()) {
                *s += w * half * v;
            }
        }
        let inc = ScherkNull.derivative(C::new(b, 0.0), 0).re()
            - ScherkNull.derivative(C::new(a, 0.0), 0).re();
        for (s, v) in acc.iter().zip(inc.to_array()) {
            assert!((s - v).abs() < 1e-12);
        }
    }

    #[test]
    fn all_builtins_validate_and_all_but_the_line_are_nondegenerate() {
        for name in BUILTIN_NAMES {
            let c = by_name(name).unwrap_or_else(|| panic!("{name}"));
            let (a, b) = c.domain();
            for j in 0..=16 {
                let u = a + (b - a) * j as f64 / 16.0;
                let nd = is_nondegenerate_at(&c, u, 1e-10);
                assert_eq!(nd, *name != "light_line", "{name} at {u}");
                if nd {
                    assert!(c.real_derivative(u, 1).t.abs() > 0.0);
                }
            }
        }
    }

    #[test]
    fn directrix_is_null_and_nondegenerate_at_origin() {
        let c = parabolic_directrix::<f64>((-1.0, 1.0), 1.0).unwrap();
        assert!(is_nondegenerate_at(&c, 0.0, 1e-12));
    }

    #[test]
    fn single_precision_helix() {
        let c = helix::<f32>(1.0, false, (0.0, 6.0), 0.5).unwrap();
        let p = c.point(0.5);
        assert!((p.x - 0.5f32.cos()).abs() < 1e-6);
    }
}
