//! Zero mean curvature surfaces in Lorentz-Minkowski 3-space.
//!
//! The crate covers null curves and their analytic continuation, the singular
//! Björling extension across a null curve, Weierstrass data of maxfaces,
//! graph-side type-change analysis, a registry of closed-form surfaces and the
//! virtual-gas flow that shares the same equation.
//!
//! Everything is generic over the scalar type through [`Real`]; the aliases at
//! the crate root fix the usual `f64` instantiation.

pub mod bjorling;
pub mod catalog;
pub mod cheb;
pub mod curve;
pub mod fluid;
pub mod graph;
pub mod lorentz;
pub mod quad;
pub mod scalar;
pub mod weierstrass;

pub use num_complex::Complex;
pub use scalar::Real;

pub use lorentz::{causal_character, minkowski_inner, CausalClass};

pub type C64 = Complex<f64>;
pub type Vec3 = lorentz::LorentzVec3<f64>;
pub type CVec3 = lorentz::ComplexVec3<f64>;
pub type NullCurve = curve::AnalyticNullCurve<f64>;
pub type Graph = graph::GraphFunction<f64>;
pub type Weierstrass = weierstrass::WeierstrassData<f64>;
