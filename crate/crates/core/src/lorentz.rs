//! Points and vectors of Lorentz-Minkowski 3-space with signature `(-,+,+)`.
//!
//! Coordinates are always ordered `(t, x, y)`. [`ComplexVec3`] carries the
//! values of holomorphic null maps (complexified curves and lifts), whose real
//! and imaginary parts are ordinary [`LorentzVec3`]s.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use thiserror::Error;

use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("non-finite component in Lorentz vector ({t}, {x}, {y})")]
pub struct NonFiniteComponent {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// A point or vector `(t, x, y)` of R^3_1.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LorentzVec3<S> {
    pub t: S,
    pub x: S,
    pub y: S,
}

impl<S: Real> LorentzVec3<S> {
    #[inline]
    pub const fn new(t: S, x: S, y: S) -> Self {
        Self { t, x, y }
    }

    /// Checked constructor rejecting NaN and infinite components.
    pub fn try_new(t: S, x: S, y: S) -> Result<Self, NonFiniteComponent> {
        let v = Self { t, x, y };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NonFiniteComponent {
                t: t.to_f64_lossy(),
                x: x.to_f64_lossy(),
                y: y.to_f64_lossy(),
            })
        }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn from_array(a: [S; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [S; 3] {
        [self.t, self.x, self.y]
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite()
    }

    pub fn euclid_norm_sq(&self) -> S {
        self.t * self.t + self.x * self.x + self.y * self.y
    }

    pub fn euclid_norm(&self) -> S {
        self.euclid_norm_sq().sqrt()
    }

    /// Componentwise largest absolute value.
    pub fn max_abs(&self) -> S {
        self.t.abs().max(self.x.abs()).max(self.y.abs())
    }

    pub fn scale(self, k: S) -> Self {
        Self::new(self.t * k, self.x * k, self.y * k)
    }

    /// Euclidean distance, used for comparing points of the model space.
    pub fn distance(&self, other: &Self) -> S {
        (*self - *other).euclid_norm()
    }
}

impl<S: Real> Add for LorentzVec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y)
    }
}

impl<S: Real> AddAssign for LorentzVec3<S> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Real> Sub for LorentzVec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y)
    }
}

impl<S: Real> Neg for LorentzVec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y)
    }
}

impl<S: Real> Mul<S> for LorentzVec3<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        self.scale(k)
    }
}

/// `<a, b> = -a.t b.t + a.x b.x + a.y b.y`.
#[inline]
pub fn minkowski_inner<S: Real>(a: &LorentzVec3<S>, b: &LorentzVec3<S>) -> S {
    -a.t * b.t + a.x * b.x + a.y * b.y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl CausalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::Timelike => "timelike",
            CausalClass::Lightlike => "lightlike",
        }
    }
}

/// Causal type of `v`. The light-like band is relative: `|<v,v>| <= tol (1 + |v|^2)`.
pub fn causal_character<S: Real>(v: &LorentzVec3<S>, tol: S) -> CausalClass {
    let q = minkowski_inner(v, v);
    let band = tol * (S::one() + v.euclid_norm_sq());
    if q.abs() <= band {
        CausalClass::Lightlike
    } else if q > S::zero() {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// A vector of C^3 in the `(t, x, y)` slots.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVec3<S> {
    pub t: Complex<S>,
    pub x: Complex<S>,
    pub y: Complex<S>,
}

impl<S: Real> ComplexVec3<S> {
    #[inline]
    pub fn new(t: Complex<S>, x: Complex<S>, y: Complex<S>) -> Self {
        Self { t, x, y }
    }

    pub fn zero() -> Self {
        let z = Complex::new(S::zero(), S::zero());
        Self::new(z, z, z)
    }

    pub fn from_real(v: LorentzVec3<S>) -> Self {
        let c = |r: S| Complex::new(r, S::zero());
        Self::new(c(v.t), c(v.x), c(v.y))
    }

    pub fn re(&self) -> LorentzVec3<S> {
        LorentzVec3::new(self.t.re, self.x.re, self.y.re)
    }

    pub fn im(&self) -> LorentzVec3<S> {
        LorentzVec3::new(self.t.im, self.x.im, self.y.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.t.conj(), self.x.conj(), self.y.conj())
    }

    pub fn scale(&self, k: Complex<S>) -> Self {
        Self::new(self.t * k, self.x * k, self.y * k)
    }

    pub fn scale_real(&self, k: S) -> Self {
        Self::new(self.t * k, self.x * k, self.y * k)
    }

    /// Complex-bilinear extension of the metric, `-a_t^2 + a_x^2 + a_y^2`.
    /// Vanishes identically for holomorphic null maps.
    pub fn null_form(&self) -> Complex<S> {
        -self.t * self.t + self.x * self.x + self.y * self.y
    }

    /// Hermitian norm `sqrt(|t|^2 + |x|^2 + |y|^2)`.
    pub fn norm(&self) -> S {
        (self.t.norm_sqr() + self.x.norm_sqr() + self.y.norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        [self.t, self.x, self.y]
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl<S: Real> Add for ComplexVec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.t + o.t, self.x + o.x, self.y + o.y)
    }
}

impl<S: Real> AddAssign for ComplexVec3<S> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Real> Sub for ComplexVec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.t - o.t, self.x - o.x, self.y - o.y)
    }
}

impl<S: Real> Neg for ComplexVec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.t, -self.x, -self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(t: f64, x: f64, y: f64) -> LorentzVec3<f64> {
        LorentzVec3::new(t, x, y)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(minkowski_inner(&v(1., 0., 0.), &v(1., 0., 0.)), -1.0);
        assert_eq!(minkowski_inner(&v(1., 1., 0.), &v(1., 1., 0.)), 0.0);
        // velocity of (sinh u, u, cosh u) at u = 0
        let a = v(0f64.cosh(), 1.0, 0f64.sinh());
        assert_eq!(minkowski_inner(&a, &a), 0.0);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(
            causal_character(&v(0., 1., 0.), 1e-12),
            CausalClass::Spacelike
        );
        assert_eq!(
            causal_character(&v(1., 0., 0.), 1e-12),
            CausalClass::Timelike
        );
        for k in 0..32 {
            let th = k as f64 * 0.37;
            assert_eq!(
                causal_character(&v(1., th.cos(), th.sin()), 1e-12),
                CausalClass::Lightlike
            );
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a = LorentzVec3::<f32>::new(1.0, 0.6, 0.8);
        assert!(minkowski_inner(&a, &a).abs() < 1e-6);
        assert_eq!(causal_character(&a, 1e-6), CausalClass::Lightlike);
    }

    #[test]
    fn try_new_rejects_nan() {
        assert!(LorentzVec3::try_new(f64::NAN, 0.0, 0.0).is_err());
        assert!(LorentzVec3::try_new(0.0, f64::INFINITY, 0.0).is_err());
        assert!(LorentzVec3::try_new(0.0, 1.0, 2.0).is_ok());
    }

    #[test]
    fn null_form_of_complex_null_direction() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let w = ComplexVec3::new(one, Complex::new(0.0, 0.0), i);
        // -1 + 0 + i^2 = -2
        assert_eq!(w.null_form(), Complex::new(-2.0, 0.0));
        let n = ComplexVec3::new(i, i, Complex::new(0.0, 0.0));
        assert_eq!(n.null_form(), Complex::new(0.0, 0.0));
    }

    fn arb() -> impl Strategy<Value = LorentzVec3<f64>> {
        (-1e3..1e3f64, -1e3..1e3f64, -1e3..1e3f64).prop_map(|(t, x, y)| v(t, x, y))
    }

    proptest! {
        #[test]
        fn inner_symmetric_bilinear(a in arb(), b in arb(), c in arb(), k in -10.0..10.0f64) {
            let lhs = minkowski_inner(&(a * k + b), &c);
            let rhs = k * minkowski_inner(&a, &c) + minkowski_inner(&b, &c);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())));
            prop_assert_eq!(minkowski_inner(&a, &b), minkowski_inner(&b, &a));
        }

        #[test]
        fn spatial_plane_is_euclidean(x1 in -1e3..1e3f64, y1 in -1e3..1e3f64, x2 in -1e3..1e3f64, y2 in -1e3..1e3f64) {
            prop_assert_eq!(minkowski_inner(&v(0., x1, y1), &v(0., x2, y2)), x1 * x2 + y1 * y2);
        }

        #[test]
        fn causal_class_scale_invariant(a in arb(), k in prop_oneof![-50.0..-0.02f64, 0.02..50.0f64]) {
            // matched relative tolerance: the band scales like |v|^2
            let tol = 1e-9;
            let base = causal_character(&a, tol);
            let n2 = a.euclid_norm_sq();
            let scaled_tol = tol * (1.0 + n2) / (1.0 + k * k * n2) * k * k;
            prop_assert_eq!(causal_character(&(a * k), scaled_tol), base);
        }
    }
}
