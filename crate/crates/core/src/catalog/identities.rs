//! Conjugate-surface identities between the catalog entries.

use std::f64::consts::PI;

use super::{catalog_get, halton_rect, CatalogError};
use crate::C64;

/// Largest residual of one identity over its samples.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub samples: usize,
    pub max_residual: f64,
}

/// Checks each identity at `n` Halton samples:
///
/// 1. `-phi1*` of `C_plus` lies on `C_zero`;
/// 2. `phi2*` of `C_minus` lies on `C_zero`;
/// 3. the time-reversed `psi1*` of `S_plus` lies on `S_zero`;
/// 4. `psi2` lies on `S_minus`;
/// 5. `cosh t = sin(u + v) / sqrt(sin 2u sin 2v)` along `psi2`;
/// 6. the time-reversed `psi2_hat` lies on `S_zero`.
pub fn conjugate_identities_check(n: usize) -> Result<Vec<IdentityCheck>, CatalogError> {
    let c0 = catalog_get("C_zero")?;
    let s0 = catalog_get("S_zero")?;
    let sm = catalog_get("S_minus")?;
    let on = |surface: &super::CatalogSurface, chart: &str| -> Result<f64, CatalogError> {
        let ch = surface.chart(chart)?;
        let mut worst = 0.0f64;
        for (u, v) in ch.samples(n) {
            worst = worst.max(surface.residual(&ch.eval(u, v)?).abs());
        }
        Ok(worst)
    };
    let mut chain = 0.0f64;
    let psi2 = sm.chart("psi2")?;
    for (u, v) in psi2.samples(n) {
        let p = psi2.eval(u, v)?;
        let rhs = (u + v).sin() / ((2.0 * u).sin() * (2.0 * v).sin()).sqrt();
        chain = chain.max((p.t.cosh() - rhs).abs());
    }
    let scherk_conj = {
        // directly from the holomorphic conjugate, independent of the chart table
        let mut worst = 0.0f64;
        for (r, th) in halton_rect(n, (0.02, 0.95), (0.0, 2.0 * PI)) {
            let p = super::scherk_conjugate(C64::from_polar(r, th))?;
            let q = super::Isometry::time_reversal().apply(&p);
            worst = worst.max(s0.residual(&q).abs());
        }
        worst
    };
    Ok(vec![
        IdentityCheck {
            name: "neg_phi1_conj_in_C_zero",
            statement: "-(conjugate of C_plus phi1) = (sinh u cos v, u, cosh u cos v) satisfies t = y tanh x",
            samples: n,
            max_residual: on(&c0, "phi1_conj")?,
        },
        IdentityCheck {
            name: "phi2_conj_in_C_zero",
            statement: "(alpha(u) - beta(v))/2 satisfies t = y tanh x",
            samples: n,
            max_residual: on(&c0, "phi2_conj_uv")?.max(on(&c0, "phi2_conj")?),
        },
        IdentityCheck {
            name: "psi1_conj_in_S_zero",
            statement: "time reversal of (log|q1|, log|q2|, log|q3|) satisfies e^t cosh x = cosh y",
            samples: n,
            max_residual: scherk_conj,
        },
        IdentityCheck {
            name: "psi2_in_S_minus",
            statement: "(gamma(u) - gamma(v))/2 satisfies cosh t = cosh x cosh y",
            samples: n,
            max_residual: on(&sm, "psi2")?,
        },
        IdentityCheck {
            name: "cosh_chain",
            statement: "cosh t = sin(u + v)/sqrt(sin 2u sin 2v) along (gamma(u) - gamma(v))/2",
            samples: n,
            max_residual: chain,
        },
        IdentityCheck {
            name: "psi2_hat_in_S_zero",
            statement: "time reversal of (gamma(u) + gamma(v))/2 satisfies e^t cosh x = cosh y",
            samples: n,
            max_residual: on(&s0, "psi2_hat")?,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let report = conjugate_identities_check(1000).unwrap();
        assert_eq!(report.len(), 6);
        for c in &report {
            let tol = if c.name == "cosh_chain" { 1e-10 } else { 1e-9 };
            assert!(c.max_residual <= tol, "{}: {:e}", c.name, c.max_residual);
        }
    }
}
