//! JSON descriptors for curves and graphs.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use zmc_core::bjorling::graph_around_curve;
use zmc_core::catalog::catalog_get;
use zmc_core::curve::{
    self, arclength_reparametrize, lift_planar, AnalyticNullCurve, AnalyticPlanar, PlanarCurve,
    PlanarShape, TaylorSegment, TaylorSegments, Validation,
};
use zmc_core::graph::{CZero, GraphFunction, HelicoidGraph, Rect, SZero};

use crate::ForgeError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDescriptor {
    pub center: f64,
    pub radius: f64,
    pub coeffs: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ShapeDescriptor {
    Circle {
        radius: f64,
        #[serde(default)]
        clockwise: bool,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
}

/// Null curve (builtin or Taylor table) or a planar curve to be lifted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveDescriptor {
    Builtin {
        name: String,
        #[serde(default)]
        domain: Option<[f64; 2]>,
        #[serde(default)]
        strip_radius: Option<f64>,
    },
    Taylor {
        segments: Vec<SegmentDescriptor>,
        domain: [f64; 2],
        strip_radius: f64,
    },
    /// Planar curve `sigma`; lifted to `(t, sigma(t))` after arclength reparametrization.
    Planar {
        shape: ShapeDescriptor,
        #[serde(default)]
        domain: Option<[f64; 2]>,
        #[serde(default)]
        strip_radius: Option<f64>,
    },
}

pub enum LoadedCurve {
    Null(AnalyticNullCurve<f64>),
    Planar(Arc<dyn PlanarCurve<f64>>),
}

impl LoadedCurve {
    pub fn null_curve(&self) -> Result<AnalyticNullCurve<f64>, ForgeError> {
        match self {
            LoadedCurve::Null(c) => Ok(c.clone()),
            LoadedCurve::Planar(p) => Ok(lift_planar(p.clone())?),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ForgeError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ForgeError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text)
        .map_err(|e| ForgeError::Descriptor(format!("{}: {e}", path.display())))
}

impl CurveDescriptor {
    pub fn load(&self) -> Result<LoadedCurve, ForgeError> {
        match self {
            CurveDescriptor::Builtin {
                name,
                domain,
                strip_radius,
            } => {
                let base = curve::by_name(name).ok_or_else(|| {
                    ForgeError::Descriptor(format!(
                        "unknown builtin curve '{name}' (known: {})",
                        curve::BUILTIN_NAMES.join(", ")
                    ))
                })?;
                if domain.is_none() && strip_radius.is_none() {
                    return Ok(LoadedCurve::Null(base));
                }
                let d = domain.map_or(base.domain(), |[a, b]| (a, b));
                let r = strip_radius.unwrap_or(base.strip_radius());
                Ok(LoadedCurve::Null(AnalyticNullCurve::new(
                    base.evaluator().clone(),
                    d,
                    r,
                    Validation::default(),
                )?))
            }
            CurveDescriptor::Taylor {
                segments,
                domain,
                strip_radius,
            } => {
                if segments.is_empty() {
                    return Err(ForgeError::Descriptor(
                        "taylor curve without segments".into(),
                    ));
                }
                let table = TaylorSegments {
                    segments: segments
                        .iter()
                        .map(|s| TaylorSegment {
                            center: s.center,
                            radius: s.radius,
                            coeffs: s.coeffs.clone(),
                        })
                        .collect(),
                };
                Ok(LoadedCurve::Null(AnalyticNullCurve::new(
                    Arc::new(table),
                    (domain[0], domain[1]),
                    *strip_radius,
                    Validation::default(),
                )?))
            }
            CurveDescriptor::Planar {
                shape,
                domain,
                strip_radius,
            } => {
                let (shape, arclength) = match *shape {
                    ShapeDescriptor::Circle { radius, clockwise } => {
                        (PlanarShape::Circle { radius, clockwise }, radius == 1.0)
                    }
                    ShapeDescriptor::Ellipse { a, b } => (PlanarShape::Ellipse { a, b }, false),
                };
                let d = domain.map_or((0.0, std::f64::consts::TAU), |[a, b]| (a, b));
                let planar = AnalyticPlanar {
                    shape,
                    domain: d,
                    arclength_flag: arclength,
                    strip_radius: strip_radius.unwrap_or(0.5),
                };
                if arclength {
                    Ok(LoadedCurve::Planar(Arc::new(planar)))
                } else {
                    Ok(LoadedCurve::Planar(Arc::new(arclength_reparametrize(
                        &planar, 128,
                    )?)))
                }
            }
        }
    }
}

/// A graph `t = f(x, y)`: closed form, catalog entry or Björling graph around a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphDescriptor {
    Builtin {
        name: String,
    },
    Catalog {
        name: String,
    },
    AroundCurve {
        curve: CurveDescriptor,
        #[serde(default)]
        u0: Option<f64>,
        half_width: f64,
        #[serde(default = "default_grid")]
        grid: usize,
    },
}

fn default_grid() -> usize {
    16
}

pub const BUILTIN_GRAPHS: &[&str] = &["C_zero", "S_zero", "helicoid"];

pub fn builtin_graph(name: &str) -> Result<GraphFunction<f64>, ForgeError> {
    let all = Rect::everywhere();
    match name {
        "C_zero" => Ok(GraphFunction::from_source(CZero, all)),
        "S_zero" => Ok(GraphFunction::from_source(SZero, all)),
        "helicoid" => Ok(GraphFunction::from_source(HelicoidGraph::default(), all)),
        _ => Err(ForgeError::Descriptor(format!(
            "unknown builtin graph '{name}' (known: {})",
            BUILTIN_GRAPHS.join(", ")
        ))),
    }
}

impl GraphDescriptor {
    /// `builtin:<name>` or a path to a JSON descriptor.
    pub fn parse_arg(arg: &str) -> Result<Self, ForgeError> {
        match arg.strip_prefix("builtin:") {
            Some(name) => Ok(GraphDescriptor::Builtin { name: name.into() }),
            None => read_json(Path::new(arg)),
        }
    }

    pub fn load(&self) -> Result<GraphFunction<f64>, ForgeError> {
        match self {
            GraphDescriptor::Builtin { name } => builtin_graph(name),
            GraphDescriptor::Catalog { name } => {
                let s = catalog_get(name)?;
                s.graph().ok_or_else(|| {
                    ForgeError::Descriptor(format!("catalog entry '{name}' is not a graph"))
                })
            }
            GraphDescriptor::AroundCurve {
                curve,
                u0,
                half_width,
                grid,
            } => {
                let c = curve.load()?.null_curve()?;
                let (a, b) = c.domain();
                let u0 = u0.unwrap_or(0.5 * (a + b));
                Ok(graph_around_curve(&c, u0, *half_width, *grid)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_curve_round_trips_through_json() {
        let d = CurveDescriptor::Builtin {
            name: "helix".into(),
            domain: Some([0.0, 3.0]),
            strip_radius: None,
        };
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"builtin","name":"helix","domain":[0.0,3.0],"strip_radius":null}"#
        );
        let back: CurveDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let LoadedCurve::Null(c) = back.load().unwrap() else {
            panic!()
        };
        assert_eq!(c.domain(), (0.0, 3.0));
    }

    #[test]
    fn taylor_descriptor_matches_the_helix() {
        // helix Taylor coefficients about u = 0: (u, cos u, sin u)
        let fact = |k: usize| (1..=k).map(|j| j as f64).product::<f64>();
        let coeffs: Vec<[f64; 3]> = (0..30)
            .map(|k| {
                let t = if k == 1 { 1.0 } else { 0.0 };
                let x = match k % 4 {
                    0 => 1.0,
                    2 => -1.0,
                    _ => 0.0,
                } / fact(k);
                let y = match k % 4 {
                    1 => 1.0,
                    3 => -1.0,
                    _ => 0.0,
                } / fact(k);
                [t, x, y]
            })
            .collect();
        let json = serde_json::json!({
            "kind": "taylor",
            "segments": [{"center": 0.0, "radius": 2.0, "coeffs": coeffs}],
            "domain": [-0.5, 0.5],
            "strip_radius": 0.5
        });
        let d: CurveDescriptor = serde_json::from_value(json).unwrap();
        let c = d.load().unwrap().null_curve().unwrap();
        let p = c.point(0.3);
        assert!((p.x - 0.3f64.cos()).abs() < 1e-15 && (p.y - 0.3f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn unknown_names_are_descriptor_errors() {
        assert!(matches!(
            builtin_graph("nope"),
            Err(ForgeError::Descriptor(_))
        ));
        let d = CurveDescriptor::Builtin {
            name: "nope".into(),
            domain: None,
            strip_radius: None,
        };
        assert!(d.load().is_err());
        assert!(serde_json::from_str::<CurveDescriptor>(r#"{"kind":"spline"}"#).is_err());
    }

    #[test]
    fn graph_arg_forms() {
        let g = GraphDescriptor::parse_arg("builtin:C_zero")
            .unwrap()
            .load()
            .unwrap();
        assert!((g.value(1.0, 2.0).unwrap() - 2.0 * 1.0f64.tanh()).abs() < 1e-15);
        let h = GraphDescriptor::Catalog {
            name: "S_zero".into(),
        }
        .load()
        .unwrap();
        assert!(h.value(0.5, 0.5).unwrap().abs() < 1e-15);
    }
}
