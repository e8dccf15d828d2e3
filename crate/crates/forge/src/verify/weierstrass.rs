//! Weierstrass data read off the catalog null curves.

use zmc_core::bjorling::maximal_extension;
use zmc_core::curve::by_name;
use zmc_core::weierstrass::{
    fold_criterion, is_nondegenerate_singular, maxface_eval, singular_residual,
    weierstrass_from_null_curve,
};
use zmc_core::{NullCurve, C64};

use super::{err, interior, par_max, Check};

pub const CURVES: [&str; 5] = [
    "helix",
    "alpha",
    "beta",
    "scherk_null",
    "parabolic_directrix",
];

fn singular_points(c: &NullCurve, n: usize) -> Vec<C64> {
    let (a, b) = c.domain();
    interior(a, b, n)
        .into_iter()
        .map(|u| C64::new(u, 0.0))
        .collect()
}

/// Points strictly inside half the strip.
fn strip_points(c: &NullCurve, n: usize) -> Vec<C64> {
    let (a, b) = c.domain();
    let r = 0.5 * c.strip_radius();
    (1..=n)
        .map(|k| {
            let s = halton::number(2, k);
            let t = halton::number(3, k);
            C64::new(a + (b - a) * (0.05 + 0.9 * s), r * (2.0 * t - 1.0))
        })
        .collect()
}

fn curve_checks(name: &str, out: &mut Vec<Check>) {
    let Some(curve) = by_name(name) else {
        out.push(Check::from_result(
            format!("weierstrass_{name}"),
            "",
            Err("unknown curve".into()),
            0.0,
        ));
        return;
    };
    let data = match weierstrass_from_null_curve(&curve) {
        Ok(d) => d,
        Err(e) => {
            out.push(Check::from_result(
                format!("weierstrass_{name}"),
                "",
                Err(e.to_string()),
                0.0,
            ));
            return;
        }
    };
    let on_fold = singular_points(&curve, 256);
    out.push(Check::from_result(
        format!("fold_{name}"),
        "Re(G' / (G^2 w)) = 0 along the singular curve, 256 points",
        par_max(&on_fold, |&z| Ok(fold_criterion(&data, z))),
        1e-10,
    ));
    out.push(Check::from_result(
        format!("singular_set_{name}"),
        "|G| = 1 along the singular curve, 256 points",
        par_max(&on_fold, |&z| Ok(singular_residual(&data, z))),
        1e-10,
    ));
    let nondeg = on_fold
        .iter()
        .map(|&z| is_nondegenerate_singular(&data, z, 1e-10))
        .collect::<Result<Vec<bool>, _>>();
    out.push(Check::from_result(
        format!("fold_nondegenerate_{name}"),
        "G' does not vanish on the singular curve (count of degenerate points)",
        nondeg
            .map(|v| v.iter().filter(|&&ok| !ok).count() as f64)
            .map_err(err),
        0.0,
    ));
    let inside = strip_points(&curve, 256);
    out.push(Check::from_result(
        format!("lift_nullity_{name}"),
        "<Phi', Phi'> / (1 + |Phi'|^2) = 0 for the holomorphic lift, 256 points",
        par_max(&inside, |&z| {
            let d = data.integrand(z);
            Ok(d.null_form().norm() / (1.0 + d.norm() * d.norm()))
        }),
        1e-12,
    ));
    let round: Vec<C64> = inside.iter().copied().take(64).collect();
    out.push(Check::from_result(
        format!("lift_roundtrip_{name}"),
        "Re of the integrated lift equals the Bjorling maximal extension, 64 points",
        par_max(&round, |&z| {
            let a = maxface_eval(&data, z).map_err(err)?;
            let b = maximal_extension(&curve, z.re, z.im).map_err(err)?;
            Ok(a.distance(&b))
        }),
        1e-9,
    ));
}

pub fn run() -> Vec<Check> {
    let mut out = Vec::new();
    for name in CURVES {
        curve_checks(name, &mut out);
    }
    out
}
