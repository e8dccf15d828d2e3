//! Weierstrass data `(G, eta = w dz)` of maxfaces.
//!
//! The holomorphic lift is `Phi = Phi(z0) + int (-2G, 1 + G^2, i(1 - G^2)) w dz`
//! along a straight segment; the maxface is `Re Phi`, its conjugate `Im Phi`.
//! The singular set is `|G| = 1`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use thiserror::Error;

use crate::curve::AnalyticNullCurve;
use crate::lorentz::{ComplexVec3, LorentzVec3};
use crate::quad::{integrate_segment, AdaptiveOptions};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeierstrassError {
    #[error("time component of the curve velocity vanishes near u = {u}")]
    TimeComponentCritical { u: f64 },
    #[error("{re} + {im}i lies outside the data domain")]
    OutOfDomain { re: f64, im: f64 },
    #[error("contour quadrature did not converge (error estimate {estimate:e})")]
    QuadratureNotConverged { estimate: f64 },
    #[error("point is not on the singular set (||G| - 1| = {residual:e})")]
    NotOnSingularSet { residual: f64 },
    #[error("base point must be real, got imaginary part {0}")]
    BasePointNotReal(f64),
}

/// Meromorphic `G`, its derivative, and the density `w` of `eta = w dz`.
pub trait WeierstrassSource<S: Real>: Send + Sync {
    fn g(&self, z: Complex<S>) -> Complex<S>;
    fn g_prime(&self, z: Complex<S>) -> Complex<S>;
    fn w(&self, z: Complex<S>) -> Complex<S>;

    /// `(-2G, 1 + G^2, i(1 - G^2)) w`.
    fn integrand(&self, z: Complex<S>) -> ComplexVec3<S> {
        let (g, w) = (self.g(z), self.w(z));
        let one = Complex::new(S::one(), S::zero());
        let i = Complex::new(S::zero(), S::one());
        let g2 = g * g;
        ComplexVec3::new(-g * w * S::lit(2.0), (one + g2) * w, i * (one - g2) * w)
    }

    fn label(&self) -> String;
}

/// Data read off a null curve. The integrand is `gamma'` itself, which
/// sidesteps the pole/zero cancellation between `G` and `w`.
pub struct CurveData<S: Real> {
    curve: AnalyticNullCurve<S>,
}

impl<S: Real> WeierstrassSource<S> for CurveData<S> {
    fn g(&self, z: Complex<S>) -> Complex<S> {
        let d = self.curve.derivative(z, 1);
        let i = Complex::new(S::zero(), S::one());
        -(d.x + i * d.y) / d.t
    }

    fn g_prime(&self, z: Complex<S>) -> Complex<S> {
        let d1 = self.curve.derivative(z, 1);
        let d2 = self.curve.derivative(z, 2);
        let i = Complex::new(S::zero(), S::one());
        let (n, dn) = (d1.x + i * d1.y, d2.x + i * d2.y);
        -(dn * d1.t - n * d2.t) / (d1.t * d1.t)
    }

    fn w(&self, z: Complex<S>) -> Complex<S> {
        let d = self.curve.derivative(z, 1);
        let i = Complex::new(S::zero(), S::one());
        (d.x - i * d.y) / S::lit(2.0)
    }

    fn integrand(&self, z: Complex<S>) -> ComplexVec3<S> {
        self.curve.derivative(z, 1)
    }

    fn label(&self) -> String {
        self.curve.label()
    }
}

/// Data given by closures for `G`, `G'` and `w`.
pub struct FnData<G, Gp, W> {
    pub g: G,
    pub g_prime: Gp,
    pub w: W,
    pub label: String,
}

impl<S, G, Gp, W> WeierstrassSource<S> for FnData<G, Gp, W>
where
    S: Real,
    G: Fn(Complex<S>) -> Complex<S> + Send + Sync,
    Gp: Fn(Complex<S>) -> Complex<S> + Send + Sync,
    W: Fn(Complex<S>) -> Complex<S> + Send + Sync,
{
    fn g(&self, z: Complex<S>) -> Complex<S> {
        (self.g)(z)
    }

    fn g_prime(&self, z: Complex<S>) -> Complex<S> {
        (self.g_prime)(z)
    }

    fn w(&self, z: Complex<S>) -> Complex<S> {
        (self.w)(z)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Simply connected parameter domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDomain<S> {
    /// `a < Re z < b`, `|Im z| < radius`.
    Strip { a: S, b: S, radius: S },
    /// `re0 < Re z < re1`, `im0 < Im z < im1`.
    Rect { re0: S, re1: S, im0: S, im1: S },
}

impl<S: Real> ParamDomain<S> {
    pub fn contains(&self, z: Complex<S>) -> bool {
        match *self {
            ParamDomain::Strip { a, b, radius } => z.re > a && z.re < b && z.im.abs() < radius,
            ParamDomain::Rect { re0, re1, im0, im1 } => {
                z.re > re0 && z.re < re1 && z.im > im0 && z.im < im1
            }
        }
    }
}

#[derive(Clone)]
pub struct WeierstrassData<S: Real> {
    source: Arc<dyn WeierstrassSource<S>>,
    base_point: Complex<S>,
    base_value: ComplexVec3<S>,
    domain: ParamDomain<S>,
}

impl<S: Real> fmt::Debug for WeierstrassData<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeierstrassData")
            .field("source", &self.source.label())
            .field("base_point", &self.base_point)
            .field("domain", &self.domain)
            .finish()
    }
}

impl<S: Real> WeierstrassData<S> {
    /// The base point must be real; `Phi(z0) = base_value` is real, so
    /// `Im Phi` vanishes at `z0`.
    pub fn new(
        source: Arc<dyn WeierstrassSource<S>>,
        base_point: S,
        base_value: LorentzVec3<S>,
        domain: ParamDomain<S>,
    ) -> Result<Self, WeierstrassError> {
        let z0 = Complex::new(base_point, S::zero());
        if !domain.contains(z0) {
            return Err(WeierstrassError::OutOfDomain {
                re: base_point.to_f64_lossy(),
                im: 0.0,
            });
        }
        Ok(Self {
            source,
            base_point: z0,
            base_value: ComplexVec3::from_real(base_value),
            domain,
        })
    }

    pub fn source(&self) -> &Arc<dyn WeierstrassSource<S>> {
        &self.source
    }

    pub fn base_point(&self) -> Complex<S> {
        self.base_point
    }

    pub fn base_value(&self) -> ComplexVec3<S> {
        self.base_value
    }

    pub fn domain(&self) -> ParamDomain<S> {
        self.domain
    }

    pub fn label(&self) -> String {
        self.source.label()
    }

    pub fn g(&self, z: Complex<S>) -> Complex<S> {
        self.source.g(z)
    }

    pub fn g_prime(&self, z: Complex<S>) -> Complex<S> {
        self.source.g_prime(z)
    }

    pub fn w(&self, z: Complex<S>) -> Complex<S> {
        self.source.w(z)
    }

    pub fn integrand(&self, z: Complex<S>) -> ComplexVec3<S> {
        self.source.integrand(z)
    }

    fn check(&self, z: Complex<S>) -> Result<(), WeierstrassError> {
        if self.domain.contains(z) {
            Ok(())
        } else {
            Err(WeierstrassError::OutOfDomain {
                re: z.re.to_f64_lossy(),
                im: z.im.to_f64_lossy(),
            })
        }
    }
}

/// `G = -(gamma_1' + i gamma_2') / gamma_0'`, `w = (gamma_1' - i gamma_2') / 2`,
/// based at the midpoint of the domain.
pub fn weierstrass_from_null_curve<S: Real>(
    curve: &AnalyticNullCurve<S>,
) -> Result<WeierstrassData<S>, WeierstrassError> {
    let (a, b) = curve.domain();
    let n = 64;
    for k in 0..=n {
        let u = a + (b - a) * S::lit(k as f64 / n as f64);
        if curve.real_derivative(u, 1).t.abs() < S::lit(1e-12) {
            return Err(WeierstrassError::TimeComponentCritical {
                u: u.to_f64_lossy(),
            });
        }
    }
    let z0 = (a + b) / S::lit(2.0);
    WeierstrassData::new(
        Arc::new(CurveData {
            curve: curve.clone(),
        }),
        z0,
        curve.point(z0),
        ParamDomain::Strip {
            a,
            b,
            radius: curve.strip_radius(),
        },
    )
}

fn lift_segment<S: Real>(
    data: &WeierstrassData<S>,
    z0: Complex<S>,
    z1: Complex<S>,
) -> Result<ComplexVec3<S>, WeierstrassError> {
    let f = |z: Complex<S>| -> Result<ComplexVec3<S>, ()> {
        let v = data.integrand(z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(())
        }
    };
    integrate_segment(&f, z0, z1, AdaptiveOptions::default()).map_err(|e| {
        WeierstrassError::QuadratureNotConverged {
            estimate: e.map_or(f64::INFINITY, |n| n.estimate),
        }
    })
}

/// `Phi(z)` by integration along the straight segment from the base point.
pub fn holomorphic_lift<S: Real>(
    data: &WeierstrassData<S>,
    z: Complex<S>,
) -> Result<ComplexVec3<S>, WeierstrassError> {
    data.check(z)?;
    Ok(data.base_value + lift_segment(data, data.base_point, z)?)
}

/// `Phi(z)` by integration along a polyline from the base point through `path`
/// (the last vertex is the evaluation point).
pub fn holomorphic_lift_along<S: Real>(
    data: &WeierstrassData<S>,
    path: &[Complex<S>],
) -> Result<ComplexVec3<S>, WeierstrassError> {
    let mut acc = data.base_value;
    let mut prev = data.base_point;
    for &z in path {
        data.check(z)?;
        acc += lift_segment(data, prev, z)?;
        prev = z;
    }
    Ok(acc)
}

pub fn maxface_eval<S: Real>(
    data: &WeierstrassData<S>,
    z: Complex<S>,
) -> Result<LorentzVec3<S>, WeierstrassError> {
    Ok(holomorphic_lift(data, z)?.re())
}

pub fn conjugate_eval<S: Real>(
    data: &WeierstrassData<S>,
    z: Complex<S>,
) -> Result<LorentzVec3<S>, WeierstrassError> {
    Ok(holomorphic_lift(data, z)?.im())
}

/// `|G(z)| - 1`.
pub fn singular_residual<S: Real>(data: &WeierstrassData<S>, z: Complex<S>) -> S {
    data.g(z).norm() - S::one()
}

/// `|G'(z)| > tol` at a point of the singular set.
pub fn is_nondegenerate_singular<S: Real>(
    data: &WeierstrassData<S>,
    z: Complex<S>,
    tol: S,
) -> Result<bool, WeierstrassError> {
    let r = singular_residual(data, z);
    if !(r.abs() <= tol) {
        return Err(WeierstrassError::NotOnSingularSet {
            residual: r.to_f64_lossy(),
        });
    }
    Ok(data.g_prime(z).norm() > tol)
}

/// `Re(G' / (G^2 w))`; vanishes along non-degenerate folds.
pub fn fold_criterion<S: Real>(data: &WeierstrassData<S>, z: Complex<S>) -> S {
    let g = data.g(z);
    (data.g_prime(z) / (g * g * data.w(z))).re
}

/// A maxface with its lift cached on a rectangular parameter grid.
#[derive(Debug, Clone)]
pub struct Maxface<S: Real> {
    pub data: WeierstrassData<S>,
    re: Vec<S>,
    im: Vec<S>,
    lift: Vec<ComplexVec3<S>>,
}

impl<S: Real> Maxface<S> {
    /// Lifts every node of `re x im`; each node is reached from its left
    /// neighbour in the same row, the first column from the base point.
    pub fn on_grid(
        data: WeierstrassData<S>,
        re: Vec<S>,
        im: Vec<S>,
    ) -> Result<Self, WeierstrassError> {
        let mut lift = Vec::with_capacity(re.len() * im.len());
        for &y in &im {
            let mut prev: Option<(Complex<S>, ComplexVec3<S>)> = None;
            for &x in &re {
                let z = Complex::new(x, y);
                data.check(z)?;
                let v = match prev {
                    None => holomorphic_lift(&data, z)?,
                    Some((zp, vp)) => vp + lift_segment(&data, zp, z)?,
                };
                lift.push(v);
                prev = Some((z, v));
            }
        }
        Ok(Self { data, re, im, lift })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.re.len(), self.im.len())
    }

    /// Node `(i, j)`: `i`-th real and `j`-th imaginary coordinate.
    pub fn node(&self, i: usize, j: usize) -> (Complex<S>, ComplexVec3<S>) {
        (
            Complex::new(self.re[i], self.im[j]),
            self.lift[j * self.re.len() + i],
        )
    }

    pub fn point(&self, i: usize, j: usize) -> LorentzVec3<S> {
        self.node(i, j).1.re()
    }

    pub fn conjugate_point(&self, i: usize, j: usize) -> LorentzVec3<S> {
        self.node(i, j).1.im()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::maximal_extension;
    use crate::curve::{helix, hyperbolic_alpha, light_line};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn helicoid_fn_data() -> WeierstrassData<f64> {
        let i = c(0.0, 1.0);
        let src = FnData {
            g: move |z: Complex<f64>| -i * (i * z).exp(),
            g_prime: move |z: Complex<f64>| (i * z).exp(),
            w: move |z: Complex<f64>| -(i / 2.0) * (-i * z).exp(),
            label: "helicoid".into(),
        };
        WeierstrassData::new(
            Arc::new(src),
            0.0,
            LorentzVec3::new(0.0, 1.0, 0.0),
            ParamDomain::Strip {
                a: -10.0,
                b: 10.0,
                radius: 2.0,
            },
        )
        .unwrap()
    }

    #[test]
    fn helix_data_closed_form() {
        let g = helix(1.0, false, (0.0, 6.0), 1.0).unwrap();
        let d = weierstrass_from_null_curve(&g).unwrap();
        let i = c(0.0, 1.0);
        for &z in &[c(0.5, 0.3), c(2.0, -0.7), c(4.0, 0.0)] {
            assert!((d.g(z) - (-i * (i * z).exp())).norm() < 1e-14);
            assert!((d.w(z) - (-(i / 2.0) * (-i * z).exp())).norm() < 1e-14);
        }
    }

    #[test]
    fn alpha_data_closed_form() {
        let a = hyperbolic_alpha((-2.0, 2.0), 1.0).unwrap();
        let d = weierstrass_from_null_curve(&a).unwrap();
        let i = c(0.0, 1.0);
        for &u in &[-1.5, 0.0, 0.7] {
            let z = c(u, 0.2);
            let want = -(1.0 + i * z.sinh()) / z.cosh();
            assert!((d.g(z) - want).norm() < 1e-14);
            assert!(singular_residual(&d, c(u, 0.0)).abs() < 1e-14);
            assert!(is_nondegenerate_singular(&d, c(u, 0.0), 1e-10).unwrap());
        }
    }

    #[test]
    fn helicoid_lift_and_singular_set() {
        let d = helicoid_fn_data();
        for &z in &[c(0.3, 0.4), c(-1.2, 1.1), c(2.0, -0.5)] {
            let phi = holomorphic_lift(&d, z).unwrap();
            assert!((phi.t - z).norm() < 1e-12);
            assert!((phi.x - z.cos()).norm() < 1e-12);
            assert!((phi.y - z.sin()).norm() < 1e-12);
        }
        assert_eq!(holomorphic_lift(&d, c(0.0, 0.0)).unwrap(), d.base_value());
        assert!(singular_residual(&d, c(1.7, 0.0)).abs() < 1e-14);
        assert!((singular_residual(&d, c(0.0, 1.0)) - (f64::exp(-1.0) - 1.0)).abs() < 1e-15);
        assert!(is_nondegenerate_singular(&d, c(0.4, 0.0), 1e-10).unwrap());
        assert!(fold_criterion(&d, c(0.9, 0.0)).abs() < 1e-14);
        let q = d.g_prime(c(0.9, 0.0)) / (d.g(c(0.9, 0.0)).powi(2) * d.w(c(0.9, 0.0)));
        assert!((q - c(0.0, -2.0)).norm() < 1e-14);
        assert!(matches!(
            is_nondegenerate_singular(&d, c(0.0, 1.0), 1e-10),
            Err(WeierstrassError::NotOnSingularSet { .. })
        ));
        assert!(matches!(
            holomorphic_lift(&d, c(0.0, 3.0)),
            Err(WeierstrassError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn degenerate_line_has_constant_g() {
        let l = light_line((-1.0, 1.0), 1.0).unwrap();
        let d = weierstrass_from_null_curve(&l).unwrap();
        for &u in &[-0.5, 0.0, 0.5] {
            assert!(!is_nondegenerate_singular(&d, c(u, 0.0), 1e-10).unwrap());
        }
    }

    #[test]
    fn round_trip_with_maximal_extension() {
        let a = hyperbolic_alpha((-2.0, 2.0), 1.0).unwrap();
        let d = weierstrass_from_null_curve(&a).unwrap();
        for &(u, v) in &[(0.3, 0.2), (-1.2, 0.6), (1.5, -0.4)] {
            let m = maxface_eval(&d, c(u, v)).unwrap();
            let e = maximal_extension(&a, u, v).unwrap();
            assert!(m.distance(&e) < 1e-9);
            // conjugate vanishes on the axis
            assert!(conjugate_eval(&d, c(u, 0.0)).unwrap().max_abs() < 1e-12);
        }
    }

    #[test]
    fn path_independence() {
        let d = helicoid_fn_data();
        let z = c(1.5, 0.8);
        let a = holomorphic_lift(&d, z).unwrap();
        let b = holomorphic_lift_along(&d, &[c(0.0, -1.0), c(2.0, 1.5), z]).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn cached_grid_matches_direct_lift() {
        let d = helicoid_fn_data();
        let m = Maxface::on_grid(d.clone(), vec![-1.0, 0.0, 0.5, 1.0], vec![-0.5, 0.25]).unwrap();
        assert_eq!(m.shape(), (4, 2));
        let (z, v) = m.node(2, 1);
        assert!((v - holomorphic_lift(&d, z).unwrap()).norm() < 1e-11);
        assert!((m.point(3, 0).x - c(1.0, -0.5).cos().re).abs() < 1e-11);
    }
}
