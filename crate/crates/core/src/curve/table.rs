//! Coefficient-table curves: Taylor segments and piecewise Chebyshev series.

use num_complex::Complex;

use super::CurveEvaluator;
use crate::cheb::PiecewiseChebyshev;
use crate::lorentz::ComplexVec3;
use crate::Real;

/// One Taylor expansion `sum_k coeffs[k] (z - center)^k`, trusted for `|z - center| < radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSegment<S> {
    pub center: S,
    pub radius: S,
    pub coeffs: Vec<[S; 3]>,
}

impl<S: Real> TaylorSegment<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let dz = z - Complex::new(self.center, S::zero());
        let mut acc = [Complex::new(S::zero(), S::zero()); 3];
        // Horner on the differentiated series
        for kk in (order..self.coeffs.len()).rev() {
            let falling: f64 = ((kk - order + 1)..=kk).map(|j| j as f64).product();
            let f = S::lit(falling);
            for (a, cf) in acc.iter_mut().zip(self.coeffs[kk]) {
                *a = *a * dz + cf * f;
            }
        }
        ComplexVec3::new(acc[0], acc[1], acc[2])
    }
}

/// Taylor segments; evaluation uses the segment whose center is nearest to `Re z`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSegments<S> {
    pub segments: Vec<TaylorSegment<S>>,
}

impl<S: Real> CurveEvaluator<S> for TaylorSegments<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let seg = self
            .segments
            .iter()
            .min_by(|a, b| {
                let da = (a.center - z.re).abs();
                let db = (b.center - z.re).abs();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("at least one Taylor segment");
        seg.derivative(z, order)
    }

    fn label(&self) -> String {
        format!("taylor({} segments)", self.segments.len())
    }
}

/// Curve backed by a piecewise Chebyshev table of `(t, x, y)`.
#[derive(Debug, Clone)]
pub struct ChebyshevCurve<S> {
    pub table: PiecewiseChebyshev<S, 3>,
}

impl<S: Real> CurveEvaluator<S> for ChebyshevCurve<S> {
    fn derivative(&self, z: Complex<S>, order: usize) -> ComplexVec3<S> {
        let [t, x, y] = self.table.eval(z, order);
        ComplexVec3::new(t, x, y)
    }

    fn label(&self) -> String {
        format!("chebyshev({} panels)", self.table.panel_count())
    }
}
