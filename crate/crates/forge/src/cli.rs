//! Command-line interface.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use zmc_core::bjorling::{graph_around_curve, ExtensionSurface, Side};
use zmc_core::catalog::{catalog_get, catalog_list, Chart};
use zmc_core::fluid::{flow_state, transonic_flow_from_convex_curve, VirtualGas};
use zmc_core::graph::{trace_typechange_curve, GraphFunction};
use zmc_core::Vec3;

use crate::descriptor::{read_json, CurveDescriptor, GraphDescriptor, LoadedCurve};
use crate::export::{self, FlowField, MeshFormat};
use crate::grid::{self, MarkedPolyline, SampleGrid};
use crate::verify::{run_suite, Suite};
use crate::ForgeError;

#[derive(Debug, Parser)]
#[command(
    name = "zmc-forge",
    version,
    about = "Zero mean curvature surfaces in Lorentz-Minkowski 3-space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or sample the closed-form surfaces.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Björling extension of a null curve.
    Bjorling(BjorlingArgs),
    /// Trace the type-change curve B = 0 of a graph.
    Typechange(TypechangeArgs),
    /// Virtual-gas flow fields.
    #[command(subcommand)]
    Fluid(FluidCmd),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// Print the registry as JSON.
    List,
    /// Sample a chart of a surface on a grid.
    Sample {
        name: String,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value = "64x64")]
        res: String,
        /// .obj, .ply, .csv, .json or .vtk; a `.meta.json` sidecar is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Max,
    Timelike,
    Unified,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Max => Side::Maximal,
            SideArg::Timelike => Side::Timelike,
            SideArg::Unified => Side::Unified,
        }
    }
}

#[derive(Debug, Args)]
pub struct BjorlingArgs {
    /// JSON curve descriptor.
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long, value_enum)]
    pub side: SideArg,
    #[arg(long, default_value = "64x32")]
    pub res: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TypechangeArgs {
    /// `builtin:<name>` or a JSON graph descriptor.
    #[arg(long)]
    pub graph: String,
    /// Starting point `X,Y` near the curve.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: String,
    #[arg(long, default_value_t = 2e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_points: usize,
    /// .csv or .json
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FluidCmd {
    /// Sample the flow of a stream function on a rectangle.
    Field(FieldArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// `builtin`, `builtin:<graph>` or `from-curve <curve.json>`.
    #[arg(long, num_args = 1..=2, required = true)]
    pub stream: Vec<String>,
    /// `x0,y0,x1,y1`; defaults to the domain of the stream function when it is bounded.
    #[arg(long, allow_hyphen_values = true)]
    pub rect: Option<String>,
    #[arg(long, default_value = "64x64")]
    pub res: String,
    #[arg(long, default_value_t = 1.0)]
    pub rho0: f64,
    /// Parameter half-width of the Björling graph for `from-curve`.
    #[arg(long, default_value_t = 0.5)]
    pub half_width: f64,
    /// .csv or .vtk
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Relax every tolerance to at least this value.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<(), ForgeError> {
    match cli.command {
        Command::Catalog(CatalogCmd::List) => catalog_list_cmd(),
        Command::Catalog(CatalogCmd::Sample {
            name,
            chart,
            res,
            out,
        }) => catalog_sample(&name, chart.as_deref(), &res, out.as_deref()),
        Command::Bjorling(a) => bjorling(a),
        Command::Typechange(a) => typechange(a),
        Command::Fluid(FluidCmd::Field(a)) => fluid_field(a),
        Command::Verify(a) => verify(a),
    }
}

fn parse_floats<const N: usize>(s: &str, what: &str) -> Result<[f64; N], ForgeError> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || {
        ForgeError::Usage(format!(
            "{what} must be {N} comma-separated numbers, got '{s}'"
        ))
    };
    if parts.len() != N {
        return Err(bad());
    }
    let mut out = [0.0f64; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| bad())?;
        if !o.is_finite() {
            return Err(bad());
        }
    }
    Ok(out)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.meta.json"))
}

fn write_json(path: &Path, v: &impl Serialize) -> Result<(), ForgeError> {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    export::write_file(path, &s)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn out_line(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_json(v: &impl Serialize) {
    out_line(&serde_json::to_string_pretty(v).expect("json serializes"));
}

fn write_mesh(
    grid: &SampleGrid,
    out: &Path,
    title: &str,
    meta: &serde_json::Value,
) -> Result<(), ForgeError> {
    let format = MeshFormat::from_path(out)?;
    export::write_file(out, &export::mesh_to_string(grid, format, title))?;
    write_json(&sidecar_path(out), meta)
}

fn catalog_list_cmd() -> Result<(), ForgeError> {
    let entries: Vec<serde_json::Value> = catalog_list()
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "equation": s.equation,
                "causal": s.causal_note,
                "graph": s.graph().is_some(),
                "charts": s.charts.iter().map(|c| json!({
                    "name": c.name,
                    "u_range": [c.u_range.0, c.u_range.1],
                    "v_range": [c.v_range.0, c.v_range.1],
                    "causal": c.causal.as_str(),
                    "holomorphic": c.holomorphic.is_some(),
                })).collect::<Vec<_>>(),
                "related": s.related.iter().map(|r| json!({
                    "kind": r.kind, "target": r.target, "note": r.note,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    print_json(&entries);
    Ok(())
}

/// `det` of the induced metric by central differences of the chart.
fn chart_metric_det(chart: &Chart, u: f64, v: f64) -> Option<f64> {
    let h = 1e-5;
    let d = |a: Vec3, b: Vec3| (a - b).scale(1.0 / (2.0 * h));
    let pu = d(chart.eval(u + h, v).ok()?, chart.eval(u - h, v).ok()?);
    let pv = d(chart.eval(u, v + h).ok()?, chart.eval(u, v - h).ok()?);
    let ip = |a: &Vec3, b: &Vec3| -a.t * b.t + a.x * b.x + a.y * b.y;
    Some(ip(&pu, &pu) * ip(&pv, &pv) - ip(&pu, &pv).powi(2))
}

fn catalog_sample(
    name: &str,
    chart: Option<&str>,
    res: &str,
    out: Option<&Path>,
) -> Result<(), ForgeError> {
    let (nu, nv) = grid::parse_resolution(res)?;
    let surface = catalog_get(name)?;
    let chart = match chart {
        Some(c) => surface.chart(c)?,
        None => surface
            .charts
            .first()
            .ok_or_else(|| ForgeError::Descriptor(format!("{name} has no charts")))?,
    };
    let graph: Option<GraphFunction<f64>> = if chart.name.contains("graph") {
        surface.graph()
    } else {
        None
    };
    let mut names = vec!["implicit_residual", "det_I"];
    if graph.is_some() {
        names.extend(["zmc_residual", "B"]);
    }
    let g = grid::sample(chart.u_range, chart.v_range, nu, nv, &names, |u, v| {
        let p = chart.eval(u, v).ok()?;
        let mut s = vec![
            surface.residual(&p),
            chart_metric_det(chart, u, v).unwrap_or(f64::NAN),
        ];
        if let Some(f) = &graph {
            match f.jet(p.x, p.y) {
                Ok(j) => s.extend([j.zmc_residual(), j.b()]),
                Err(_) => s.extend([f64::NAN, f64::NAN]),
            }
        }
        Some((p, s))
    })?;
    let meta = json!({
        "surface": surface.name,
        "chart": chart.name,
        "equation": surface.equation,
        "causal": chart.causal.as_str(),
        "res": [nu, nv],
        "u_range": [chart.u_range.0, chart.u_range.1],
        "v_range": [chart.v_range.0, chart.v_range.1],
        "vertices": g.vertices.len(),
        "invalid_vertices": g.valid.iter().filter(|&&ok| !ok).count(),
        "max_implicit_residual": g.max_abs("implicit_residual"),
        "max_zmc_residual": g.max_abs("zmc_residual"),
    });
    match out {
        Some(path) => write_mesh(
            &g,
            path,
            &format!("{} / {}", surface.name, chart.name),
            &meta,
        )?,
        None => print_json(&meta),
    }
    Ok(())
}

fn bjorling(a: BjorlingArgs) -> Result<(), ForgeError> {
    let (nu, nv) = grid::parse_resolution(&a.res)?;
    let desc: CurveDescriptor = read_json(&a.curve)?;
    let curve = desc.load()?.null_curve()?;
    let side: Side = a.side.into();
    let surf = ExtensionSurface::new(curve.clone(), side);
    let (u0, u1) = curve.domain();
    let r = curve.strip_radius();
    let vmax = match side {
        Side::Unified => 0.9 * r * r,
        _ => 0.9 * r,
    };
    let mut g = grid::sample(
        (u0, u1),
        (-vmax, vmax),
        nu,
        nv,
        &["det_I", "singular"],
        |u, v| {
            let j = surf.jet(u, v).ok()?;
            let det = j.first_fundamental_det();
            let scale = 1.0
                + j.pu
                    .to_array()
                    .iter()
                    .chain(&j.pv.to_array())
                    .map(|c| c * c)
                    .sum::<f64>();
            Some((
                j.p,
                vec![det, f64::from(u8::from(det.abs() <= 1e-12 * scale * scale))],
            ))
        },
    )?;
    g.polylines.push(MarkedPolyline {
        name: "null_curve".into(),
        points: grid::nodes((u0, u1), nu)
            .into_iter()
            .map(|u| curve.point(u))
            .collect(),
    });
    let meta = json!({
        "curve": curve.label(),
        "side": side.as_str(),
        "res": [nu, nv],
        "u_range": [u0, u1],
        "v_range": [-vmax, vmax],
        "parameter": if side == Side::Unified { "w = +-v^2 (w < 0 maximal, w > 0 time-like)" } else { "v" },
        "vertices": g.vertices.len(),
        "invalid_vertices": g.valid.iter().filter(|&&ok| !ok).count(),
    });
    match a.out {
        Some(path) => write_mesh(
            &g,
            &path,
            &format!("bjorling {} / {}", curve.label(), side.as_str()),
            &meta,
        )?,
        None => print_json(&meta),
    }
    Ok(())
}

fn typechange(a: TypechangeArgs) -> Result<(), ForgeError> {
    let [x, y] = parse_floats::<2>(&a.seed, "--seed")?;
    if !(a.step > 0.0) {
        return Err(ForgeError::Usage("--step must be positive".into()));
    }
    let f = GraphDescriptor::parse_arg(&a.graph)?.load()?;
    let pl = trace_typechange_curve(&f, [x, y], a.step, a.max_points)?;
    let rows = pl.annotate(&f)?;
    let summary = json!({
        "graph": f.label(),
        "points": pl.len(),
        "closed": pl.closed,
        "max_abs_B": rows.iter().map(|r| r[2].abs()).fold(0.0, f64::max),
        "min_grad_B": rows.iter().map(|r| r[3]).fold(f64::INFINITY, f64::min),
    });
    match a.out {
        Some(path) => {
            let ext = path
                .extension()
                .and_then(|e| e.to_str())
                .unwrap_or("")
                .to_ascii_lowercase();
            match ext.as_str() {
                "csv" => export::write_file(&path, &export::polyline_csv(&rows))?,
                "json" => write_json(
                    &path,
                    &json!({
                        "graph": f.label(),
                        "closed": pl.closed,
                        "columns": ["x", "y", "B", "grad_B_norm"],
                        "points": rows,
                    }),
                )?,
                _ => {
                    return Err(ForgeError::Usage(format!(
                        "polyline output must be .csv or .json, got '{}'",
                        path.display()
                    )))
                }
            }
        }
        None => print_json(&summary),
    }
    Ok(())
}

fn stream_function(a: &FieldArgs) -> Result<GraphFunction<f64>, ForgeError> {
    let kind = a.stream[0].as_str();
    match (kind, a.stream.get(1)) {
        ("builtin", None) => crate::descriptor::builtin_graph("helicoid"),
        (k, None) if k.starts_with("builtin:") => GraphDescriptor::parse_arg(k)?.load(),
        ("from-curve", Some(path)) => {
            let desc: CurveDescriptor = read_json(Path::new(path))?;
            let gas = VirtualGas::new(a.rho0, 1.0)?;
            match desc.load()? {
                LoadedCurve::Planar(sigma) => {
                    Ok(transonic_flow_from_convex_curve(sigma, &gas, a.half_width, 16)?.psi)
                }
                LoadedCurve::Null(c) => {
                    let (lo, hi) = c.domain();
                    Ok(graph_around_curve(&c, 0.5 * (lo + hi), a.half_width, 16)?)
                }
            }
        }
        _ => Err(ForgeError::Usage(format!(
            "--stream expects 'builtin', 'builtin:<graph>' or 'from-curve <file>', got '{}'",
            a.stream.join(" ")
        ))),
    }
}

fn fluid_field(a: FieldArgs) -> Result<(), ForgeError> {
    let (nx, ny) = grid::parse_resolution(&a.res)?;
    let gas = VirtualGas::new(a.rho0, 1.0)?;
    let psi = stream_function(&a)?;
    let d = psi.domain();
    let [x0, y0, x1, y1] = match &a.rect {
        Some(r) => parse_floats::<4>(r, "--rect")?,
        None if [d.x0, d.y0, d.x1, d.y1].iter().all(|v| v.is_finite()) => [d.x0, d.y0, d.x1, d.y1],
        None => {
            return Err(ForgeError::Usage(format!(
                "{} is unbounded; pass --rect",
                psi.label()
            )))
        }
    };
    if !(x0 < x1 && y0 < y1) {
        return Err(ForgeError::Usage(format!(
            "--rect needs x0 < x1 and y0 < y1, got {x0},{y0},{x1},{y1}"
        )));
    }
    let g = grid::sample((x0, x1), (y0, y1), nx, ny, &[], |x, y| {
        flow_state(&psi, &gas, x, y, 1e-12)
            .ok()
            .map(|_| (Vec3::new(0.0, x, y), vec![]))
    })?;
    // states again in order; the grid pass only established validity in parallel
    let (xs, ys) = g.params();
    let states = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .zip(&g.valid)
        .map(|((x, y), &ok)| {
            if ok {
                flow_state(&psi, &gas, x, y, 1e-12).ok()
            } else {
                None
            }
        })
        .collect();
    let field = FlowField {
        nx,
        ny,
        xs,
        ys,
        states,
    };
    let title = format!("virtual-gas flow of {}", psi.label());
    match a.out {
        Some(path) => {
            let ext = path
                .extension()
                .and_then(|e| e.to_str())
                .unwrap_or("")
                .to_ascii_lowercase();
            match ext.as_str() {
                "csv" => export::write_file(&path, &export::field_csv(&field))?,
                "vtk" => export::write_file(&path, &export::field_vtk(&field, &title))?,
                _ => {
                    return Err(ForgeError::Usage(format!(
                        "field output must be .csv or .vtk, got '{}'",
                        path.display()
                    )))
                }
            }
        }
        None => {
            let count = |r: &str| {
                field
                    .states
                    .iter()
                    .flatten()
                    .filter(|s| s.regime.as_str() == r)
                    .count()
            };
            print_json(&json!({
                "stream": psi.label(),
                "rect": [x0, y0, x1, y1],
                "nodes": nx * ny,
                "undefined": field.states.iter().filter(|s| s.is_none()).count(),
                "subsonic": count("subsonic"),
                "supersonic": count("supersonic"),
                "sonic": count("sonic"),
            }));
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), ForgeError> {
    if let Some(t) = a.tol {
        if !(t >= 0.0) {
            return Err(ForgeError::Usage(format!(
                "--tol must be non-negative, got {t}"
            )));
        }
    }
    let report = run_suite(a.suite, a.tol)?;
    for c in &report.checks {
        out_line(&format!(
            "{} {:<44} {:>10.3e} <= {:.1e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.max_residual,
            c.tol
        ));
    }
    if let Some(path) = &a.report {
        export::write_file(path, &report.to_json())?;
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(ForgeError::VerificationFailed {
            failed,
            total: report.checks.len(),
        });
    }
    Ok(())
}
