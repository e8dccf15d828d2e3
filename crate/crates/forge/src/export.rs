//! Deterministic text exporters: OBJ, PLY, CSV, legacy VTK and JSON.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), lines end in LF.
//! OBJ and PLY put time on the third axis: `(t, x, y) -> (x, y, t)`.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use zmc_core::fluid::FlowState;

use crate::grid::SampleGrid;
use crate::ForgeError;

/// 17 significant digits; non-finite values as `nan`, `inf`, `-inf`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
    Csv,
    Json,
    Vtk,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Result<Self, ForgeError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("")
            .to_ascii_lowercase();
        match ext.as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            "csv" => Ok(MeshFormat::Csv),
            "json" => Ok(MeshFormat::Json),
            "vtk" => Ok(MeshFormat::Vtk),
            _ => Err(ForgeError::Usage(format!(
                "cannot infer output format from '{}' (use .obj, .ply, .csv, .json or .vtk)",
                path.display()
            ))),
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), ForgeError> {
    std::fs::write(path, text).map_err(|e| ForgeError::Io(path.display().to_string(), e))
}

pub fn mesh_to_string(grid: &SampleGrid, format: MeshFormat, title: &str) -> String {
    match format {
        MeshFormat::Obj => obj(grid, title),
        MeshFormat::Ply => ply(grid, title),
        MeshFormat::Csv => csv(grid),
        MeshFormat::Json => json(grid, title),
        MeshFormat::Vtk => vtk(grid, title),
    }
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

pub fn obj(grid: &SampleGrid, title: &str) -> String {
    let mut s = String::new();
    writeln!(s, "# {}", one_line(title)).unwrap();
    writeln!(s, "# vertices (x, y, t), grid {}x{}", grid.nu, grid.nv).unwrap();
    for p in &grid.vertices {
        writeln!(s, "v {} {} {}", num(p.x), num(p.y), num(p.t)).unwrap();
    }
    for q in grid.faces() {
        writeln!(s, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1).unwrap();
    }
    s
}

pub fn ply(grid: &SampleGrid, title: &str) -> String {
    let faces = grid.faces();
    let mut s = String::new();
    s.push_str("ply\nformat ascii 1.0\n");
    writeln!(s, "comment {}", one_line(title)).unwrap();
    writeln!(s, "element vertex {}", grid.vertices.len()).unwrap();
    s.push_str("property double x\nproperty double y\nproperty double z\nproperty uchar valid\n");
    for (name, _) in &grid.scalars {
        writeln!(s, "property double {name}").unwrap();
    }
    writeln!(s, "element face {}", faces.len()).unwrap();
    s.push_str("property list uchar int vertex_indices\nend_header\n");
    for (k, p) in grid.vertices.iter().enumerate() {
        write!(
            s,
            "{} {} {} {}",
            num(p.x),
            num(p.y),
            num(p.t),
            u8::from(grid.valid[k])
        )
        .unwrap();
        for (_, v) in &grid.scalars {
            write!(s, " {}", num(v[k])).unwrap();
        }
        s.push('\n');
    }
    for q in faces {
        writeln!(s, "4 {} {} {} {}", q[0], q[1], q[2], q[3]).unwrap();
    }
    s
}

pub fn csv(grid: &SampleGrid) -> String {
    let (us, vs) = grid.params();
    let mut s = String::from("i,j,u,v,t,x,y,valid");
    for (name, _) in &grid.scalars {
        write!(s, ",{name}").unwrap();
    }
    s.push('\n');
    for j in 0..grid.nv {
        for i in 0..grid.nu {
            let k = grid.index(i, j);
            let p = grid.vertices[k];
            write!(
                s,
                "{i},{j},{},{},{},{},{},{}",
                num(us[i]),
                num(vs[j]),
                num(p.t),
                num(p.x),
                num(p.y),
                u8::from(grid.valid[k])
            )
            .unwrap();
            for (_, v) in &grid.scalars {
                write!(s, ",{}", num(v[k])).unwrap();
            }
            s.push('\n');
        }
    }
    s
}

pub fn vtk(grid: &SampleGrid, title: &str) -> String {
    let n = grid.vertices.len();
    let mut s = String::from("# vtk DataFile Version 3.0\n");
    writeln!(s, "{}", one_line(title)).unwrap();
    s.push_str("ASCII\nDATASET STRUCTURED_GRID\n");
    writeln!(s, "DIMENSIONS {} {} 1", grid.nu, grid.nv).unwrap();
    writeln!(s, "POINTS {n} double").unwrap();
    for p in &grid.vertices {
        writeln!(s, "{} {} {}", num(p.x), num(p.y), num(p.t)).unwrap();
    }
    writeln!(s, "POINT_DATA {n}").unwrap();
    s.push_str("SCALARS valid int 1\nLOOKUP_TABLE default\n");
    for &ok in &grid.valid {
        writeln!(s, "{}", u8::from(ok)).unwrap();
    }
    for (name, v) in &grid.scalars {
        writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for &x in v {
            writeln!(s, "{}", num(x)).unwrap();
        }
    }
    s
}

#[derive(Serialize)]
struct JsonPolyline<'a> {
    name: &'a str,
    points: Vec<[f64; 3]>,
}

#[derive(Serialize)]
struct JsonMesh<'a> {
    title: &'a str,
    u_range: [f64; 2],
    v_range: [f64; 2],
    nu: usize,
    nv: usize,
    /// `(t, x, y)` per vertex.
    vertices: Vec<[f64; 3]>,
    valid: &'a [bool],
    scalars: Vec<(&'a str, &'a [f64])>,
    faces: Vec<[usize; 4]>,
    polylines: Vec<JsonPolyline<'a>>,
}

/// JSON numbers use the shortest round-trip representation; NaN becomes `null`.
pub fn json(grid: &SampleGrid, title: &str) -> String {
    let mesh = JsonMesh {
        title,
        u_range: [grid.u_range.0, grid.u_range.1],
        v_range: [grid.v_range.0, grid.v_range.1],
        nu: grid.nu,
        nv: grid.nv,
        vertices: grid.vertices.iter().map(|p| p.to_array()).collect(),
        valid: &grid.valid,
        scalars: grid
            .scalars
            .iter()
            .map(|(n, v)| (n.as_str(), v.as_slice()))
            .collect(),
        faces: grid.faces(),
        polylines: grid
            .polylines
            .iter()
            .map(|p| JsonPolyline {
                name: &p.name,
                points: p.points.iter().map(|q| q.to_array()).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&mesh).expect("mesh serializes");
    s.push('\n');
    s
}

/// Polyline rows `(x, y, B, |grad B|)`.
pub fn polyline_csv(rows: &[[f64; 4]]) -> String {
    let mut s = String::from("x,y,B,grad_B_norm\n");
    for r in rows {
        writeln!(s, "{},{},{},{}", num(r[0]), num(r[1]), num(r[2]), num(r[3])).unwrap();
    }
    s
}

/// Sampled flow field on an `nx x ny` grid, row-major in `y`.
#[derive(Debug, Clone)]
pub struct FlowField {
    pub nx: usize,
    pub ny: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub states: Vec<Option<FlowState<f64>>>,
}

pub const FIELD_COLUMNS: [&str; 9] = ["x", "y", "psi", "rho", "u", "v", "q", "B", "regime"];

pub fn field_csv(field: &FlowField) -> String {
    let mut s = FIELD_COLUMNS.join(",");
    s.push('\n');
    for j in 0..field.ny {
        for i in 0..field.nx {
            let (x, y) = (field.xs[i], field.ys[j]);
            match &field.states[j * field.nx + i] {
                Some(st) => writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    num(x),
                    num(y),
                    num(st.psi),
                    num(st.rho),
                    num(st.velocity[0]),
                    num(st.velocity[1]),
                    num(st.speed),
                    num(st.b),
                    st.regime.as_str()
                )
                .unwrap(),
                None => {
                    writeln!(s, "{},{},nan,nan,nan,nan,nan,nan,undefined", num(x), num(y)).unwrap()
                }
            }
        }
    }
    s
}

pub fn field_vtk(field: &FlowField, title: &str) -> String {
    let n = field.nx * field.ny;
    let mut s = String::from("# vtk DataFile Version 3.0\n");
    writeln!(s, "{}", one_line(title)).unwrap();
    s.push_str("ASCII\nDATASET STRUCTURED_GRID\n");
    writeln!(s, "DIMENSIONS {} {} 1", field.nx, field.ny).unwrap();
    writeln!(s, "POINTS {n} double").unwrap();
    for j in 0..field.ny {
        for i in 0..field.nx {
            writeln!(s, "{} {} {}", num(field.xs[i]), num(field.ys[j]), num(0.0)).unwrap();
        }
    }
    writeln!(s, "POINT_DATA {n}").unwrap();
    let column = |s: &mut String, name: &str, f: &dyn Fn(&FlowState<f64>) -> f64| {
        writeln!(s, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for st in &field.states {
            writeln!(s, "{}", num(st.as_ref().map_or(f64::NAN, f))).unwrap();
        }
    };
    column(&mut s, "psi", &|st| st.psi);
    column(&mut s, "rho", &|st| st.rho);
    column(&mut s, "q", &|st| st.speed);
    column(&mut s, "B", &|st| st.b);
    // regime code: 1 subsonic, -1 supersonic, 0 sonic
    column(&mut s, "regime", &|st| match st.regime {
        zmc_core::fluid::Regime::Subsonic => 1.0,
        zmc_core::fluid::Regime::Supersonic => -1.0,
        zmc_core::fluid::Regime::Sonic => 0.0,
    });
    writeln!(s, "VECTORS velocity double").unwrap();
    for st in &field.states {
        let v = st.as_ref().map_or([f64::NAN; 2], |st| st.velocity);
        writeln!(s, "{} {} {}", num(v[0]), num(v[1]), num(0.0)).unwrap();
    }
    s
}

/// Parses the numeric columns of a CSV written by this module.
pub fn parse_csv_numbers(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').filter_map(|c| c.parse::<f64>().ok()).collect())
        .collect()
}
