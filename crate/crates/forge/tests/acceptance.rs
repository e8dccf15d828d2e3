//! One PASS/FAIL line per acceptance criterion, driven by the `verify` command.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use zmc_forge::verify::{Check, Report};

const SUITES: [&str; 4] = ["catalog", "weierstrass", "fluid", "roundtrip"];
const SUITE_BUDGET: Duration = Duration::from_secs(60);

/// Check-name prefixes per criterion; every check must land in exactly one.
const CRITERIA: [(u32, &str, &[&str]); 8] = [
    (
        1,
        "PDE residuals, analytic and finite-difference with O(h^2)",
        &["pde_"],
    ),
    (
        2,
        "catalog implicit/parametrization consistency",
        &["chart_", "holomorphic_"],
    ),
    (3, "conjugate identities and the cosh chain", &["identity_"]),
    (
        4,
        "Bjorling round trips",
        &[
            "unified_circle_",
            "typechange_C_zero_hausdorff",
            "null_lift_roundtrip_",
            "reparametrization_independence",
        ],
    ),
    (
        5,
        "Weierstrass fold criterion, singular set, lift",
        &["fold_", "singular_set_", "lift_nullity_", "lift_roundtrip_"],
    ),
    (
        6,
        "gradient and Hessian non-degeneracy criteria agree",
        &["prop_equiv_"],
    ),
    (
        7,
        "quadratic contact of the parabolic completions",
        &["contact_"],
    ),
    (
        8,
        "virtual-gas flows and the transonic circle",
        &[
            "bernoulli_",
            "continuity_",
            "irrotationality_",
            "sonic_radius_",
            "supersonic_interior_",
            "regime_flip_",
            "accel_supersonic_",
            "q_power_",
            "sonic_line_",
        ],
    ),
];

fn run_verify(suite: &str, report: &std::path::Path) -> Result<(Vec<u8>, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_zmc-forge"))
        .args(["verify", "--suite", suite, "--report"])
        .arg(report)
        .output()
        .map_err(|e| format!("cannot run zmc-forge: {e}"))?;
    let elapsed = start.elapsed();
    match out.status.code() {
        Some(0) | Some(1) => {}
        c => {
            return Err(format!(
                "verify --suite {suite} exited with {c:?}: {}",
                String::from_utf8_lossy(&out.stderr)
            ))
        }
    }
    let bytes = std::fs::read(report).map_err(|e| format!("report of {suite} missing: {e}"))?;
    Ok((bytes, elapsed))
}

fn criterion_of(check: &Check) -> Option<u32> {
    CRITERIA
        .iter()
        .find(|(_, _, prefixes)| prefixes.iter().any(|p| check.name.starts_with(p)))
        .map(|(n, _, _)| *n)
}

fn line(n: u32, ok: bool, what: &str, detail: &str) {
    println!(
        "criterion {n}: {} {what} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut all_ok = true;

    // each suite on its own, for the time budget
    let mut timing = Vec::new();
    for suite in SUITES {
        match run_verify(suite, &dir.path().join(format!("{suite}.json"))) {
            Ok((_, t)) => timing.push((suite, t)),
            Err(e) => {
                println!("suite {suite}: FAIL {e}");
                all_ok = false;
            }
        }
    }
    for (suite, t) in &timing {
        let ok = *t <= SUITE_BUDGET;
        all_ok &= ok;
        println!(
            "suite {suite}: {} {:.2} s",
            if ok { "PASS" } else { "FAIL" },
            t.as_secs_f64()
        );
    }

    let first = run_verify("all", &dir.path().join("all_1.json"));
    let second = run_verify("all", &dir.path().join("all_2.json"));
    let (first, second) = match (first, second) {
        (Ok(a), Ok(b)) => (a.0, b.0),
        (a, b) => {
            for e in [a.err(), b.err()].into_iter().flatten() {
                println!("verify --suite all: {e}");
            }
            for (n, what, _) in CRITERIA {
                line(n, false, what, "no report");
            }
            line(
                9,
                false,
                "two runs give byte-identical reports",
                "no report",
            );
            return ExitCode::FAILURE;
        }
    };
    let report: Report = match serde_json::from_slice(&first) {
        Ok(r) => r,
        Err(e) => {
            println!("report does not parse: {e}");
            return ExitCode::FAILURE;
        }
    };

    let unmapped: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| criterion_of(c).is_none())
        .map(|c| c.name.as_str())
        .collect();
    if !unmapped.is_empty() {
        println!("unmapped checks: FAIL {}", unmapped.join(", "));
        all_ok = false;
    }

    for (n, what, _) in CRITERIA {
        let mine: Vec<&Check> = report
            .checks
            .iter()
            .filter(|c| criterion_of(c) == Some(n))
            .collect();
        let failed: Vec<String> = mine
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} = {:e} > {:e}", c.name, c.max_residual, c.tol))
            .collect();
        let ok = !mine.is_empty() && failed.is_empty();
        all_ok &= ok;
        let detail = if mine.is_empty() {
            "no checks".to_string()
        } else if failed.is_empty() {
            format!("{} checks", mine.len())
        } else {
            format!(
                "{} of {} failed: {}",
                failed.len(),
                mine.len(),
                failed.join("; ")
            )
        };
        line(n, ok, what, &detail);
    }

    let same = first == second;
    all_ok &= same;
    line(
        9,
        same,
        "two runs of verify --suite all give byte-identical reports",
        &format!("{} bytes", first.len()),
    );

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
