use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use super::scherk::{scherk_conjugate_holomorphic, scherk_holomorphic};
use super::{
    lv, scherk_conjugate, scherk_maxface, scherk_null_point, scherk_timelike, CatalogError,
    CatalogSurface, Chart, ChartCausal, ComplexParam, HoloMap, Isometry, Relation,
};
use crate::graph::{CZero, GraphFunction, HelicoidGraph, Rect, SZero};
use crate::lorentz::ComplexVec3;
use crate::scalar::log_cosh;
use crate::{CVec3, Vec3, C64};

type R = Result<Vec3, CatalogError>;

const I: C64 = C64::new(0.0, 1.0);

fn cv(t: C64, x: C64, y: C64) -> CVec3 {
    ComplexVec3::new(t, x, y)
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn chart(
    name: &'static str,
    map: fn(f64, f64) -> R,
    u: (f64, f64),
    v: (f64, f64),
    causal: ChartCausal,
) -> Chart {
    Chart {
        name,
        map,
        u_range: u,
        v_range: v,
        causal,
        isometry: Isometry::identity(),
        holomorphic: None,
    }
}

impl Chart {
    fn holo(mut self, h: HoloMap, p: ComplexParam) -> Self {
        self.holomorphic = Some((h, p));
        self
    }

    fn iso(mut self, i: Isometry) -> Self {
        self.isometry = i;
        self
    }
}

fn rel(kind: &'static str, target: &'static str, note: &'static str) -> Relation {
    Relation { kind, target, note }
}

fn alpha(u: f64) -> Vec3 {
    lv(u.sinh(), u, u.cosh())
}

fn beta(v: f64) -> Vec3 {
    lv(v.sinh(), v, -v.cosh())
}

/// Directrix `(-u - u^3/3, -u + u^3/3, -u^2)` of the parabolic helicoid.
fn directrix(z: C64) -> CVec3 {
    let z3 = z * z * z / 3.0;
    cv(-z - z3, -z + z3, -z * z)
}

fn directrix_real(u: f64) -> Vec3 {
    directrix(c(u)).re()
}

fn c_plus() -> CatalogSurface {
    CatalogSurface {
        name: "C_plus",
        equation: "sin^2 x + y^2 - t^2 = 0",
        implicit: |p| p.x.sin().powi(2) + p.y * p.y - p.t * p.t,
        charts: vec![
            chart(
                "phi1",
                |u, v| Ok(lv(u.cosh() * v.sin(), v, u.sinh() * v.sin())),
                (-2.0, 2.0),
                (-PI, PI),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(cv(-I * z.sinh(), -I * z, -I * z.cosh())), ComplexParam::Plain),
            chart(
                "psi1",
                |u, v| Ok(lv(-u.cosh() * v.sin(), v, -u.sinh() * v.sin())),
                (-2.0, 2.0),
                (-PI, PI),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(cv(I * z.sinh(), -I * z, I * z.cosh())), ComplexParam::Plain),
        ],
        causal_note: "space-like hyperbolic catenoid; generalized cone-like singular points at v = n pi; singly periodic in x",
        related: vec![rel(
            "conjugate",
            "C_zero",
            "conjugate of phi1 is -(sinh u cos v, u, cosh u cos v); its point reflection lies on C_zero",
        )],
        graph: None,
    }
}

fn c_minus() -> CatalogSurface {
    CatalogSurface {
        name: "C_minus",
        equation: "sinh^2 x + y^2 - t^2 = 0",
        implicit: |p| p.x.sinh().powi(2) + p.y * p.y - p.t * p.t,
        charts: vec![
            chart(
                "phi2",
                |u, v| Ok((alpha(u) + beta(v)).scale(0.5)),
                (-2.0, 2.0),
                (-2.0, 2.0),
                ChartCausal::Timelike,
            ),
            chart(
                "psi2",
                |u, v| Ok(lv(-u.sinh() - v.sinh(), u + v, -u.cosh() + v.cosh()).scale(0.5)),
                (-2.0, 2.0),
                (-2.0, 2.0),
                ChartCausal::Timelike,
            ),
        ],
        causal_note: "time-like hyperbolic catenoid; union of the closures of phi2 and psi2",
        related: vec![rel(
            "conjugate",
            "C_zero",
            "conjugate (alpha(u) - beta(v))/2 equals (cosh xi sinh zeta, zeta, cosh xi cosh zeta) with u = xi + zeta, v = xi - zeta",
        )],
        graph: None,
    }
}

fn s_plus() -> CatalogSurface {
    CatalogSurface {
        name: "S_plus",
        equation: "cos t - cos x cos y = 0",
        implicit: |p| p.t.cos() - p.x.cos() * p.y.cos(),
        charts: vec![
            chart(
                "phi1",
                |r, th| scherk_maxface(C64::from_polar(r, th)),
                (0.02, 0.95),
                (0.0, 2.0 * PI),
                ChartCausal::Spacelike,
            )
            .holo(scherk_holomorphic, ComplexParam::Polar),
            chart(
                "psi1",
                |r, th| scherk_maxface(C64::from_polar(r, th)),
                (0.02, 0.95),
                (0.0, 2.0 * PI),
                ChartCausal::Spacelike,
            )
            .holo(scherk_holomorphic, ComplexParam::Polar)
            .iso(Isometry::signs(-1.0, 1.0, -1.0).with_shift([PI, 0.0, PI])),
        ],
        causal_note: "space-like Scherk surface; triply periodic; disk charts in polar coordinates z = r e^{i theta}",
        related: vec![rel(
            "conjugate",
            "S_zero",
            "conjugate of psi1 is (log|q1|, log|q2|, log|q3|); after time reversal it lies on S_zero",
        )],
        graph: None,
    }
}

fn s_minus() -> CatalogSurface {
    CatalogSurface {
        name: "S_minus",
        equation: "cosh t - cosh x cosh y = 0",
        implicit: |p| p.t.cosh() - p.x.cosh() * p.y.cosh(),
        charts: vec![chart(
            "psi2",
            scherk_timelike,
            (0.05, FRAC_PI_2 - 0.05),
            (0.05, FRAC_PI_2 - 0.05),
            ChartCausal::Timelike,
        )],
        causal_note: "time-like Scherk surface of the first kind",
        related: vec![rel(
            "conjugate",
            "S_zero",
            "psi2 = (gamma(u) - gamma(v))/2 is the conjugate of psi2_hat = (gamma(u) + gamma(v))/2",
        )],
        graph: None,
    }
}

fn c_zero_graph() -> GraphFunction<f64> {
    GraphFunction::new(Arc::new(CZero), Rect::new(-3.0, -3.0, 3.0, 3.0))
}

fn c_zero() -> CatalogSurface {
    CatalogSurface {
        name: "C_zero",
        equation: "t - y tanh x = 0",
        implicit: |p| p.t - p.y * p.x.tanh(),
        charts: vec![
            chart(
                "graph",
                |x, y| Ok(lv(y * x.tanh(), x, y)),
                (-3.0, 3.0),
                (-3.0, 3.0),
                ChartCausal::Mixed,
            ),
            chart(
                "phi1_conj",
                |u, v| Ok(lv(-u.sinh() * v.cos(), -u, -u.cosh() * v.cos())),
                (-2.0, 2.0),
                (-PI, PI),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(cv(-z.sinh(), -z, -z.cosh())), ComplexParam::Plain)
            .iso(Isometry::point_reflection()),
            chart(
                "phi2_conj",
                |xi, zeta| Ok(lv(xi.cosh() * zeta.sinh(), zeta, xi.cosh() * zeta.cosh())),
                (-2.0, 2.0),
                (-2.0, 2.0),
                ChartCausal::Timelike,
            ),
            chart(
                "phi2_conj_uv",
                |u, v| Ok((alpha(u) - beta(v)).scale(0.5)),
                (-2.0, 2.0),
                (-2.0, 2.0),
                ChartCausal::Timelike,
            ),
        ],
        causal_note: "entire graph; changes type across the null curves y = +-cosh x",
        related: vec![
            rel("conjugate", "C_plus", "space-like part contains -phi1_conj"),
            rel("conjugate", "C_minus", "time-like part contains phi2_conj"),
        ],
        graph: Some(c_zero_graph),
    }
}

fn s_zero_graph() -> GraphFunction<f64> {
    GraphFunction::new(Arc::new(SZero), Rect::new(-3.0, -3.0, 3.0, 3.0))
}

fn s_zero() -> CatalogSurface {
    CatalogSurface {
        name: "S_zero",
        equation: "e^t cosh x - cosh y = 0",
        implicit: |p| p.t - (log_cosh(p.y) - log_cosh(p.x)),
        charts: vec![
            chart(
                "graph",
                |x, y| Ok(lv(log_cosh(y) - log_cosh(x), x, y)),
                (-3.0, 3.0),
                (-3.0, 3.0),
                ChartCausal::Mixed,
            ),
            chart(
                "psi1_conj",
                |r, th| scherk_conjugate(C64::from_polar(r, th)),
                (0.02, 0.95),
                (0.0, 2.0 * PI),
                ChartCausal::Spacelike,
            )
            .holo(scherk_conjugate_holomorphic, ComplexParam::Polar)
            .iso(Isometry::time_reversal()),
            chart(
                "psi2_hat",
                |u, v| {
                    let (a, b) = (scherk_null_point(u)?, scherk_null_point(v)?);
                    Ok((a + b).scale(0.5))
                },
                (0.05, FRAC_PI_2 - 0.05),
                (0.05, FRAC_PI_2 - 0.05),
                ChartCausal::Timelike,
            )
            .iso(Isometry::time_reversal()),
        ],
        causal_note: "entire graph; space-like part connected, time-like part has four components",
        related: vec![
            rel("conjugate", "S_plus", "time reversal of psi1_conj"),
            rel("conjugate", "S_minus", "time reversal of psi2_hat"),
        ],
        graph: Some(s_zero_graph),
    }
}

fn helicoid_graph() -> GraphFunction<f64> {
    // atan2 cut along the negative x-axis; domain keeps clear of it and the origin
    GraphFunction::new(
        Arc::new(HelicoidGraph::default()),
        Rect::new(0.1, -3.0, 3.0, 3.0),
    )
}

fn helicoid() -> CatalogSurface {
    CatalogSurface {
        name: "helicoid",
        equation: "x sin t - y cos t = 0",
        implicit: |p| p.x * p.t.sin() - p.y * p.t.cos(),
        charts: vec![
            chart(
                "maximal",
                |u, v| Ok(lv(u, u.cos() * v.cosh(), u.sin() * v.cosh())),
                (-PI, PI),
                (-1.0, 1.0),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(cv(z, z.cos(), z.sin())), ComplexParam::Plain),
            chart(
                "timelike",
                |u, v| Ok(lv(u, u.cos() * v.cos(), u.sin() * v.cos())),
                (-PI, PI),
                (-1.0, 1.0),
                ChartCausal::Timelike,
            ),
            chart(
                "polar_graph",
                |r, th| Ok(lv(th, r * th.cos(), r * th.sin())),
                (0.1, 3.0),
                (-PI, PI),
                ChartCausal::Mixed,
            ),
            chart(
                "elliptic_conj",
                |u, v| Ok(lv(u, v.cosh() * u.sin(), -v.cosh() * u.cos())),
                (-PI, PI),
                (-1.0, 1.0),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(cv(-I * z, -I * z.sinh(), -z.cosh())), ComplexParam::Swapped)
            .iso(Isometry::quarter_turn()),
        ],
        causal_note: "Björling extension of the circle lift (t, cos t, sin t); space-like for r > 1, time-like for r < 1",
        related: vec![rel(
            "conjugate",
            "elliptic_catenoid_spacelike",
            "conjugate of phi_e_plus, rotated by a quarter turn, is elliptic_conj",
        )],
        graph: Some(helicoid_graph),
    }
}

fn elliptic_spacelike() -> CatalogSurface {
    CatalogSurface {
        name: "elliptic_catenoid_spacelike",
        equation: "x^2 + y^2 - sinh^2 t = 0",
        implicit: |p| p.x * p.x + p.y * p.y - p.t.sinh().powi(2),
        charts: vec![chart(
            "phi_e_plus",
            |u, v| Ok(lv(v, u.cos() * v.sinh(), u.sin() * v.sinh())),
            (-PI, PI),
            (-2.0, 2.0),
            ChartCausal::Spacelike,
        )
        .holo(
            |z| Ok(cv(z, z.sinh(), -I * z.cosh())),
            ComplexParam::Swapped,
        )],
        causal_note: "space-like elliptic catenoid; cone-like singular point at the origin",
        related: vec![rel(
            "conjugate",
            "helicoid",
            "conjugate lies on the helicoid after a quarter turn",
        )],
        graph: None,
    }
}

fn elliptic_timelike() -> CatalogSurface {
    CatalogSurface {
        name: "elliptic_catenoid_timelike",
        equation: "x^2 - y^2 - sinh^2 t = 0",
        implicit: |p| p.x * p.x - p.y * p.y - p.t.sinh().powi(2),
        charts: vec![chart(
            "phi_e_minus",
            |u, v| Ok(lv(v, u.cosh() * v.sinh(), u.sinh() * v.sinh())),
            (-1.5, 1.5),
            (-2.0, 2.0),
            ChartCausal::Timelike,
        )],
        causal_note: "time-like elliptic catenoid",
        related: vec![rel(
            "conjugate",
            "helicoid",
            "conjugate is a subset of a helicoid",
        )],
        graph: None,
    }
}

fn parabolic_plus() -> CatalogSurface {
    CatalogSurface {
        name: "parabolic_completion_plus",
        equation: "(x + t){12(x - t) - (x + t)^3} + 12 y^2 = 0",
        implicit: |p| super::Completion::Plus.eval(p.t, p.x, p.y),
        charts: vec![
            chart(
                "phi_p_plus",
                |u, v| {
                    let v3 = v * v * v / 3.0;
                    Ok(lv(v - v3 + u * u * v, v + v3 - u * u * v, 2.0 * u * v))
                },
                (-1.5, 1.5),
                (-1.5, 1.5),
                ChartCausal::Spacelike,
            )
            .holo(
                |z| {
                    let z3 = z * z * z / 3.0;
                    Ok(cv(z - z3, z + z3, -I * z * z))
                },
                ComplexParam::Swapped,
            ),
            chart(
                "light_line",
                |u, _| Ok(lv(-u, u, 0.0)),
                (-3.0, 3.0),
                (0.0, 1.0),
                ChartCausal::Mixed,
            ),
        ],
        causal_note: "completion of the space-like parabolic catenoid; contains the light-like line y = x + t = 0",
        related: vec![rel("conjugate", "parabolic_helicoid", "conjugate of phi_p_plus is the v > 0 half of the parabolic helicoid")],
        graph: None,
    }
}

fn parabolic_minus() -> CatalogSurface {
    CatalogSurface {
        name: "parabolic_completion_minus",
        equation: "(x + t){12(x - t) + (x + t)^3} + 12 y^2 = 0",
        implicit: |p| super::Completion::Minus.eval(p.t, p.x, p.y),
        charts: vec![
            chart(
                "phi_p_minus",
                |u, v| {
                    let v3 = v * v * v / 3.0;
                    Ok(lv(v + u * u * v + v3, v - u * u * v - v3, 2.0 * u * v))
                },
                (-1.5, 1.5),
                (-1.5, 1.5),
                ChartCausal::Timelike,
            ),
            chart(
                "light_line",
                |u, _| Ok(lv(-u, u, 0.0)),
                (-3.0, 3.0),
                (0.0, 1.0),
                ChartCausal::Mixed,
            ),
        ],
        causal_note: "completion of the time-like parabolic catenoid; contains the light-like line y = x + t = 0",
        related: vec![rel("conjugate", "parabolic_helicoid", "conjugate is the v < 0 half of the parabolic helicoid")],
        graph: None,
    }
}

fn parabolic_helicoid() -> CatalogSurface {
    CatalogSurface {
        name: "parabolic_helicoid",
        equation: "(t - x) - 2u(y + 2u^2/3) = 0, u = -(x + t)/2",
        implicit: |p| {
            let u = -(p.x + p.t) / 2.0;
            (p.t - p.x) - 2.0 * u * (p.y + 2.0 * u * u / 3.0)
        },
        charts: vec![
            chart(
                "ruled",
                |u, v| Ok(directrix_real(u) + lv(u, -u, 1.0).scale(v)),
                (-1.5, 1.5),
                (-2.0, 2.0),
                ChartCausal::Mixed,
            ),
            chart(
                "timelike_extension",
                |u, v| {
                    Ok(lv(
                        -u - u * u * u / 3.0 - u * v * v,
                        -u + u * u * u / 3.0 + u * v * v,
                        -u * u - v * v,
                    ))
                },
                (-1.5, 1.5),
                (-1.5, 1.5),
                ChartCausal::Timelike,
            ),
            chart(
                "maximal_extension",
                |u, v| Ok(directrix(C64::new(u, v)).re()),
                (-1.5, 1.5),
                (-1.5, 1.5),
                ChartCausal::Spacelike,
            )
            .holo(|z| Ok(directrix(z)), ComplexParam::Plain),
        ],
        causal_note:
            "ruled surface gamma(u) + v(u, -u, 1); changes type across the null directrix gamma",
        related: vec![
            rel("conjugate", "parabolic_completion_plus", "v > 0 half"),
            rel("conjugate", "parabolic_completion_minus", "v < 0 half"),
        ],
        graph: None,
    }
}

/// All twelve entries in a fixed order.
pub fn catalog_list() -> Vec<CatalogSurface> {
    vec![
        c_plus(),
        c_minus(),
        s_plus(),
        s_minus(),
        c_zero(),
        s_zero(),
        helicoid(),
        elliptic_spacelike(),
        elliptic_timelike(),
        parabolic_plus(),
        parabolic_minus(),
        parabolic_helicoid(),
    ]
}
