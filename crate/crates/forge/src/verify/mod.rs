//! Verification suites and their JSON report.

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::grid::thread_pool;
use crate::ForgeError;

mod catalog;
mod fluid;
mod roundtrip;
mod weierstrass;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity or property being checked.
    pub paper_ref: String,
    /// `null` in JSON when the computation failed.
    #[serde(deserialize_with = "nan_from_null")]
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

fn nan_from_null<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        statement: impl Into<String>,
        max_residual: f64,
        tol: f64,
    ) -> Self {
        Self {
            name: name.into(),
            paper_ref: statement.into(),
            max_residual,
            tol,
            pass: max_residual <= tol,
        }
    }

    /// A failed computation becomes a NaN residual; the error goes to stderr.
    pub fn from_result(
        name: impl Into<String>,
        statement: impl Into<String>,
        r: Result<f64, String>,
        tol: f64,
    ) -> Self {
        let name = name.into();
        let v = r.unwrap_or_else(|e| {
            eprintln!("check {name}: {e}");
            f64::NAN
        });
        Self::new(name, statement, v, tol)
    }

    /// Pass/fail as residual 0 or 1 against tolerance 0.
    pub fn flag(name: impl Into<String>, statement: impl Into<String>, ok: bool) -> Self {
        Self::new(name, statement, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Catalog,
    Weierstrass,
    Fluid,
    Roundtrip,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Catalog => "catalog",
            Suite::Weierstrass => "weierstrass",
            Suite::Fluid => "fluid",
            Suite::Roundtrip => "roundtrip",
            Suite::All => "all",
        }
    }
}

/// Runs a suite. `tol_floor` relaxes every tolerance to at least that value.
pub fn run_suite(suite: Suite, tol_floor: Option<f64>) -> Result<Report, ForgeError> {
    let pool = thread_pool()?;
    let mut checks = pool.install(|| match suite {
        Suite::Catalog => catalog::run(),
        Suite::Weierstrass => weierstrass::run(),
        Suite::Fluid => fluid::run(),
        Suite::Roundtrip => roundtrip::run(),
        Suite::All => {
            let mut all = catalog::run();
            all.extend(weierstrass::run());
            all.extend(fluid::run());
            all.extend(roundtrip::run());
            all
        }
    });
    if let Some(t) = tol_floor {
        for c in &mut checks {
            c.tol = c.tol.max(t);
            c.pass = c.max_residual <= c.tol;
        }
    }
    Ok(Report {
        suite: suite.as_str().into(),
        checks,
    })
}

/// Parallel maximum of `|f|` over `items`, in a fixed reduction order.
pub(crate) fn par_max<T, F>(items: &[T], f: F) -> Result<f64, String>
where
    T: Sync,
    F: Fn(&T) -> Result<f64, String> + Sync,
{
    let vals: Vec<Result<f64, String>> = items.par_iter().map(|t| f(t)).collect();
    let mut m = 0.0f64;
    for v in vals {
        let v = v?.abs();
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        m = m.max(v);
    }
    Ok(m)
}

pub(crate) fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `n` equispaced values strictly inside `(a, b)`.
pub(crate) fn interior(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * (k as f64 + 0.5) / n as f64)
        .collect()
}

pub(crate) fn grid2(xr: (f64, f64), yr: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    let xs = crate::grid::nodes(xr, n);
    let ys = crate::grid::nodes(yr, n);
    ys.iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .collect()
}
