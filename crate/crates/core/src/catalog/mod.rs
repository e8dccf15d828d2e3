//! Registry of closed-form zero mean curvature surfaces.
//!
//! Each entry carries an implicit residual `F(t, x, y)` and named charts
//! `(u, v) -> (t, x, y)`. A chart's raw formula is composed with a stored
//! [`Isometry`] before it meets the implicit equation, so congruences are
//! explicit. Charts that are the real part of a holomorphic null map also
//! expose that map, which makes the maxface property checkable.
//!
//! The registry is `f64` only.

mod contact;
mod identities;
mod isometry;
mod scherk;
mod surfaces;

use std::f64::consts::PI;

use thiserror::Error;

use crate::graph::GraphFunction;
use crate::lorentz::{ComplexVec3, LorentzVec3};
use crate::{CVec3, Vec3, C64};

pub use contact::{alpha0_ii_contact, alpha0_ii_contact_with, Completion};
pub use identities::{conjugate_identities_check, IdentityCheck};
pub use isometry::Isometry;
pub use scherk::{
    scherk_conjugate, scherk_maxface, scherk_null_point, scherk_timelike, BRANCH_TOL,
};
pub use surfaces::catalog_list;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("{re} + {im}i is within {tol:e} of a branch point")]
    NearBranchPoint { re: f64, im: f64, tol: f64 },
    #[error("({u}, {v}) is outside the chart")]
    OutOfChart { u: f64, v: f64 },
    #[error("Newton iteration failed for c = {c}, y = {y}")]
    NewtonFailed { c: f64, y: f64 },
    #[error("contact parameter must satisfy 0.1 <= |c| <= 10, got {0}")]
    InvalidContactParameter(f64),
    #[error("unknown catalog entry {0:?}")]
    UnknownSurface(String),
    #[error("unknown chart {chart:?} of {surface}")]
    UnknownChart { surface: String, chart: String },
}

/// Causal character of a chart's image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartCausal {
    Spacelike,
    Timelike,
    /// Crosses a type-change curve.
    Mixed,
}

impl ChartCausal {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartCausal::Spacelike => "spacelike",
            ChartCausal::Timelike => "timelike",
            ChartCausal::Mixed => "mixed",
        }
    }
}

/// How `(u, v)` maps to the holomorphic variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexParam {
    /// `z = u + iv`.
    Plain,
    /// `z = v + iu`.
    Swapped,
    /// `z = u e^{iv}`.
    Polar,
}

impl ComplexParam {
    pub fn z(self, u: f64, v: f64) -> C64 {
        match self {
            ComplexParam::Plain => C64::new(u, v),
            ComplexParam::Swapped => C64::new(v, u),
            ComplexParam::Polar => C64::from_polar(u, v),
        }
    }
}

pub type ChartMap = fn(f64, f64) -> Result<Vec3, CatalogError>;
pub type HoloMap = fn(C64) -> Result<CVec3, CatalogError>;

#[derive(Debug, Clone)]
pub struct Chart {
    pub name: &'static str,
    pub map: ChartMap,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub causal: ChartCausal,
    /// Applied to `map` (and `holomorphic`) before comparing with the implicit equation.
    pub isometry: Isometry,
    /// `map = Re holomorphic(z(u, v))` when present.
    pub holomorphic: Option<(HoloMap, ComplexParam)>,
}

impl Chart {
    pub fn eval(&self, u: f64, v: f64) -> Result<Vec3, CatalogError> {
        Ok(self.isometry.apply(&(self.map)(u, v)?))
    }

    /// Holomorphic lift through the chart's isometry.
    pub fn holomorphic_eval(&self, u: f64, v: f64) -> Option<Result<CVec3, CatalogError>> {
        let (h, p) = self.holomorphic?;
        Some(h(p.z(u, v)).map(|w| self.isometry.apply_complex(&w)))
    }

    /// `n` Halton points (bases 2, 3) in the chart rectangle.
    pub fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        halton_rect(n, self.u_range, self.v_range)
    }
}

/// How two entries are related.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub kind: &'static str,
    pub target: &'static str,
    pub note: &'static str,
}

pub struct CatalogSurface {
    pub name: &'static str,
    pub equation: &'static str,
    pub implicit: fn(&Vec3) -> f64,
    pub charts: Vec<Chart>,
    pub causal_note: &'static str,
    pub related: Vec<Relation>,
    graph: Option<fn() -> GraphFunction<f64>>,
}

impl std::fmt::Debug for CatalogSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogSurface")
            .field("name", &self.name)
            .field(
                "charts",
                &self.charts.iter().map(|c| c.name).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl CatalogSurface {
    pub fn residual(&self, p: &Vec3) -> f64 {
        (self.implicit)(p)
    }

    pub fn chart(&self, name: &str) -> Result<&Chart, CatalogError> {
        self.charts
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| CatalogError::UnknownChart {
                surface: self.name.to_string(),
                chart: name.to_string(),
            })
    }

    /// The entry as a graph `t = f(x, y)`, when it is one.
    pub fn graph(&self) -> Option<GraphFunction<f64>> {
        self.graph.map(|g| g())
    }

    /// Largest `|F o chart|` over `n` Halton samples of every chart.
    pub fn max_chart_residual(&self, n: usize) -> Result<f64, CatalogError> {
        let mut worst = 0.0f64;
        for c in &self.charts {
            for (u, v) in c.samples(n) {
                worst = worst.max(self.residual(&c.eval(u, v)?).abs());
            }
        }
        Ok(worst)
    }
}

pub fn catalog_get(name: &str) -> Result<CatalogSurface, CatalogError> {
    catalog_list()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CatalogError::UnknownSurface(name.to_string()))
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog_list().iter().map(|s| s.name).collect()
}

pub(crate) fn halton_rect(n: usize, u: (f64, f64), v: (f64, f64)) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let a = halton::number(2, i);
            let b = halton::number(3, i);
            (u.0 + (u.1 - u.0) * a, v.0 + (v.1 - v.0) * b)
        })
        .collect()
}

/// Deviation of a holomorphic chart from its real part and from nullity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxfaceCheck {
    /// `max |Re Phi(z(u, v)) - chart(u, v)|`.
    pub real_part: f64,
    /// `max |<Phi', Phi'>| / (1 + |Phi'|^2)`.
    pub nullity: f64,
}

/// Derivative by a 32-point Cauchy integral on a circle of radius `r`.
fn cauchy_derivative(h: HoloMap, z: C64, r: f64) -> Result<CVec3, CatalogError> {
    let n = 32;
    let mut acc = ComplexVec3::zero();
    for k in 0..n {
        let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
        acc += h(z + e * r)?.scale(e.conj());
    }
    Ok(acc.scale_real(1.0 / (n as f64 * r)))
}

/// Checks a chart with a holomorphic lift at `n` samples; `None` if it has none.
pub fn maxface_check(chart: &Chart, n: usize) -> Result<Option<MaxfaceCheck>, CatalogError> {
    let Some((h, param)) = chart.holomorphic else {
        return Ok(None);
    };
    let mut out = MaxfaceCheck {
        real_part: 0.0,
        nullity: 0.0,
    };
    for (u, v) in chart.samples(n) {
        let p = chart.eval(u, v)?;
        let lift = chart.holomorphic_eval(u, v).expect("holomorphic chart")?;
        out.real_part = out.real_part.max(lift.re().distance(&p));
        let z = param.z(u, v);
        // keep the contour inside the chart's analyticity region
        let r = match param {
            ComplexParam::Polar => 0.25 * u.min(1.0 - u).min(0.1),
            _ => 1e-2,
        };
        let d = cauchy_derivative(h, z, r)?;
        let scaled = d.null_form().norm() / (1.0 + d.norm() * d.norm());
        out.nullity = out.nullity.max(scaled);
    }
    Ok(Some(out))
}

pub(crate) fn lv(t: f64, x: f64, y: f64) -> Vec3 {
    LorentzVec3::new(t, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::zmc_residual;

    #[test]
    fn twelve_entries() {
        let names = catalog_names();
        assert_eq!(
            names,
            vec![
                "C_plus",
                "C_minus",
                "S_plus",
                "S_minus",
                "C_zero",
                "S_zero",
                "helicoid",
                "elliptic_catenoid_spacelike",
                "elliptic_catenoid_timelike",
                "parabolic_completion_plus",
                "parabolic_completion_minus",
                "parabolic_helicoid",
            ]
        );
        assert!(matches!(
            catalog_get("nope"),
            Err(CatalogError::UnknownSurface(_))
        ));
    }

    #[test]
    fn charts_satisfy_their_implicit_equations() {
        for s in catalog_list() {
            let r = s.max_chart_residual(1000).unwrap();
            assert!(r <= 1e-10, "{}: {r:e}", s.name);
        }
    }

    #[test]
    fn holomorphic_charts_are_maxfaces() {
        let mut seen = 0;
        for s in catalog_list() {
            for c in &s.charts {
                if let Some(m) = maxface_check(c, 200).unwrap() {
                    seen += 1;
                    assert!(m.real_part <= 1e-10, "{}/{}: {m:?}", s.name, c.name);
                    assert!(m.nullity <= 1e-10, "{}/{}: {m:?}", s.name, c.name);
                    assert_eq!(c.causal, ChartCausal::Spacelike);
                }
            }
        }
        assert!(seen >= 8);
    }

    #[test]
    fn spot_values() {
        let cp = catalog_get("C_plus").unwrap();
        let p = cp.chart("phi1").unwrap().eval(0.4, 1.1).unwrap();
        assert!((p.t - 0.4f64.cosh() * 1.1f64.sin()).abs() < 1e-15);
        assert!(cp.residual(&p).abs() < 1e-15);
        let pp = catalog_get("parabolic_completion_plus").unwrap();
        let q = pp.chart("phi_p_plus").unwrap().eval(0.7, -0.3).unwrap();
        assert!(pp.residual(&q).abs() < 1e-13);
        // the light-like line lies on both completions
        let pm = catalog_get("parabolic_completion_minus").unwrap();
        for c in [-2.0, 0.5, 3.0] {
            assert_eq!(pp.residual(&lv(-c, c, 0.0)), 0.0);
            assert_eq!(pm.residual(&lv(-c, c, 0.0)), 0.0);
        }
    }

    #[test]
    fn c_plus_period() {
        let c = catalog_get("C_plus").unwrap();
        let ch = c.chart("phi1").unwrap();
        for (u, v) in ch.samples(50) {
            let a = ch.eval(u, v).unwrap();
            let b = ch.eval(u, v + 2.0 * PI).unwrap();
            assert!(
                (b.t - a.t).abs() < 1e-12
                    && (b.x - a.x - 2.0 * PI).abs() < 1e-12
                    && (b.y - a.y).abs() < 1e-12
            );
        }
    }

    #[test]
    fn s_plus_triply_periodic() {
        let s = catalog_get("S_plus").unwrap();
        let ch = s.chart("phi1").unwrap();
        let tau = 2.0 * PI;
        for (u, v) in ch.samples(100) {
            let p = ch.eval(u, v).unwrap();
            for shift in [lv(tau, 0.0, 0.0), lv(0.0, tau, 0.0), lv(0.0, 0.0, tau)] {
                assert!(s.residual(&(p + shift)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn graph_entries_are_zmc() {
        for name in ["C_zero", "S_zero", "helicoid"] {
            let s = catalog_get(name).unwrap();
            let g = s.graph().unwrap();
            let d = g.domain();
            for (x, y) in halton_rect(500, (d.x0, d.x1), (d.y0, d.y1)) {
                let r = zmc_residual(&g, x, y).unwrap();
                assert!(r.abs() <= 1e-12, "{name} {x} {y} {r:e}");
                let t = g.value(x, y).unwrap();
                assert!(s.residual(&lv(t, x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn directrix_of_parabolic_helicoid_is_nondegenerate() {
        use crate::curve::{is_nondegenerate_at, parabolic_directrix};
        let g = parabolic_directrix((-2.0, 2.0), 1.0).unwrap();
        for k in 0..=40 {
            let u = -1.9 + 3.8 * k as f64 / 40.0;
            assert!(is_nondegenerate_at(&g, u, 1e-10));
        }
        assert!(is_nondegenerate_at(&g, 0.0, 1e-10));
    }
}
