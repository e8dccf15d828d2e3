//! Gauss-Legendre quadrature on segments, fixed-order and adaptive.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex;

use crate::lorentz::ComplexVec3;
use crate::Real;

const RULE_ORDER: usize = 10;

fn rule_f64(order: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(order).expect("positive quadrature order");
    GaussLegendre::new(n).into_node_weight_pairs().into_vec()
}

fn default_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| rule_f64(RULE_ORDER))
}

/// Nodes and weights on `[-1, 1]` converted to `S`.
pub fn gauss_legendre<S: Real>(order: usize) -> Vec<(S, S)> {
    rule_f64(order)
        .into_iter()
        .map(|(x, w)| (S::lit(x), S::lit(w)))
        .collect()
}

/// Fixed-order rule on `[a, b]` for a real integrand.
pub fn integrate_real<S: Real>(a: S, b: S, rule: &[(S, S)], mut f: impl FnMut(S) -> S) -> S {
    let half = (b - a) / S::lit(2.0);
    let mid = (b + a) / S::lit(2.0);
    rule.iter()
        .fold(S::zero(), |acc, &(x, w)| acc + w * f(mid + half * x))
        * half
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_depth: 20,
        }
    }
}

/// Quadrature gave up before meeting the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotConverged {
    pub estimate: f64,
}

fn segment_rule<S: Real, F>(f: &F, z0: Complex<S>, z1: Complex<S>) -> Result<ComplexVec3<S>, ()>
where
    F: Fn(Complex<S>) -> Result<ComplexVec3<S>, ()>,
{
    let half = (z1 - z0) / S::lit(2.0);
    let mid = (z1 + z0) / S::lit(2.0);
    let mut acc = ComplexVec3::zero();
    for &(x, w) in default_rule() {
        let v = f(mid + half * S::lit(x))?;
        acc += v.scale_real(S::lit(w));
    }
    Ok(acc.scale(half))
}

/// Integrates a C^3-valued integrand `f(z) dz` along the straight segment `z0 -> z1`.
///
/// Bisects until the whole-segment rule and the two half-segment rules agree
/// within the tolerance share of each piece. `f` may fail (point outside its
/// domain); that failure is passed through as `Err(None)`.
pub fn integrate_segment<S: Real, F>(
    f: &F,
    z0: Complex<S>,
    z1: Complex<S>,
    opts: AdaptiveOptions,
) -> Result<ComplexVec3<S>, Option<NotConverged>>
where
    F: Fn(Complex<S>) -> Result<ComplexVec3<S>, ()>,
{
    if z0 == z1 {
        return Ok(ComplexVec3::zero());
    }
    let whole = segment_rule(f, z0, z1).map_err(|_| None)?;
    recurse(f, z0, z1, whole, S::lit(opts.abs_tol), opts.max_depth)
}

fn recurse<S: Real, F>(
    f: &F,
    z0: Complex<S>,
    z1: Complex<S>,
    whole: ComplexVec3<S>,
    tol: S,
    depth: u32,
) -> Result<ComplexVec3<S>, Option<NotConverged>>
where
    F: Fn(Complex<S>) -> Result<ComplexVec3<S>, ()>,
{
    let mid = (z0 + z1) / S::lit(2.0);
    let left = segment_rule(f, z0, mid).map_err(|_| None)?;
    let right = segment_rule(f, mid, z1).map_err(|_| None)?;
    let refined = left + right;
    let err = (refined - whole).norm();
    // a rule of this order on smooth integrands is far past the tolerance once
    // halves agree; roundoff floor keeps huge integrands from looping
    let floor = S::epsilon() * S::lit(64.0) * refined.norm();
    if err <= tol.max(floor) {
        return Ok(refined);
    }
    if depth == 0 {
        return Err(Some(NotConverged {
            estimate: err.to_f64_lossy(),
        }));
    }
    let half_tol = tol / S::lit(2.0);
    let l = recurse(f, z0, mid, left, half_tol, depth - 1)?;
    let r = recurse(f, mid, z1, right, half_tol, depth - 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let rule = gauss_legendre::<f64>(5);
        let v = integrate_real(-1.0, 2.0, &rule, |x| x.powi(9));
        assert!((v - (2f64.powi(10) - 1.0) / 10.0).abs() < 1e-11);
    }

    #[test]
    fn exp_along_complex_segment() {
        let f = |z: Complex<f64>| {
            let e = z.exp();
            Ok(ComplexVec3::new(e, z.cos(), Complex::new(1.0, 0.0)))
        };
        let z0 = Complex::new(0.0, 0.0);
        let z1 = Complex::new(1.5, -0.7);
        let v = integrate_segment(&f, z0, z1, AdaptiveOptions::default()).unwrap();
        assert!((v.t - (z1.exp() - 1.0)).norm() < 1e-13);
        assert!((v.x - z1.sin()).norm() < 1e-13);
        assert!((v.y - z1).norm() < 1e-14);
    }

    #[test]
    fn depth_exhaustion_reports_not_converged() {
        // 1/sqrt(z) is integrable at 0 but the rule converges too slowly with depth 1
        let f = |z: Complex<f64>| {
            let g = Complex::new(1.0, 0.0) / z.sqrt();
            Ok(ComplexVec3::new(g, g, g))
        };
        let r = integrate_segment(
            &f,
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            AdaptiveOptions {
                abs_tol: 1e-14,
                max_depth: 1,
            },
        );
        assert!(matches!(r, Err(Some(_))));
    }
}
