//! Scherk-type maps on the unit disk and on `(0, pi/2)^2`.
//!
//! On the open unit disk the three quotients `(1 + z^2)/(1 - z^2)`,
//! `(1 - z)/(1 + z)` and `(1 - iz)/(1 + iz)` have positive real part, so
//! principal arguments and logarithms are continuous on the whole disk and no
//! slits are needed.

use std::f64::consts::FRAC_PI_2;

use super::{lv, CatalogError};
use crate::lorentz::ComplexVec3;
use crate::{CVec3, Vec3, C64};

/// Minimum distance from the branch points `+-1`, `+-i`.
pub const BRANCH_TOL: f64 = 1e-6;

fn check_disk(z: C64) -> Result<(), CatalogError> {
    let i = C64::new(0.0, 1.0);
    for b in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), i, -i] {
        if (z - b).norm() < BRANCH_TOL {
            return Err(CatalogError::NearBranchPoint {
                re: z.re,
                im: z.im,
                tol: BRANCH_TOL,
            });
        }
    }
    if !(z.norm() < 1.0) {
        return Err(CatalogError::OutOfChart { u: z.re, v: z.im });
    }
    Ok(())
}

fn quotients(z: C64) -> [C64; 3] {
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let z2 = z * z;
    [
        (one + z2) / (one - z2),
        (one - z) / (one + z),
        (one - i * z) / (one + i * z),
    ]
}

/// `(pi/2)(1, 1, 1) + i (log q1, log q2, log q3)`; its real part is the maxface.
pub fn scherk_holomorphic(z: C64) -> Result<CVec3, CatalogError> {
    check_disk(z)?;
    let i = C64::new(0.0, 1.0);
    let h = C64::new(FRAC_PI_2, 0.0);
    let [a, b, c] = quotients(z);
    Ok(ComplexVec3::new(
        h + i * a.ln(),
        h + i * b.ln(),
        h + i * c.ln(),
    ))
}

/// `(log q1, log q2, log q3)`; its real part is the conjugate surface.
pub fn scherk_conjugate_holomorphic(z: C64) -> Result<CVec3, CatalogError> {
    check_disk(z)?;
    let [a, b, c] = quotients(z);
    Ok(ComplexVec3::new(a.ln(), b.ln(), c.ln()))
}

/// `(pi/2)(1, 1, 1) - (arg q1, arg q2, arg q3)`, on `cos t = cos x cos y`.
pub fn scherk_maxface(z: C64) -> Result<Vec3, CatalogError> {
    check_disk(z)?;
    let [a, b, c] = quotients(z);
    Ok(lv(
        FRAC_PI_2 - a.arg(),
        FRAC_PI_2 - b.arg(),
        FRAC_PI_2 - c.arg(),
    ))
}

/// `(log|q1|, log|q2|, log|q3|)`, on `e^{-t} cosh x = cosh y`.
pub fn scherk_conjugate(z: C64) -> Result<Vec3, CatalogError> {
    check_disk(z)?;
    let [a, b, c] = quotients(z);
    Ok(lv(a.norm().ln(), b.norm().ln(), c.norm().ln()))
}

/// `(log cot u, log tan(u/2), atanh(sin u))` for `0 < u < pi/2`.
pub fn scherk_null_point(u: f64) -> Result<Vec3, CatalogError> {
    if !(u > 0.0 && u < FRAC_PI_2) {
        return Err(CatalogError::OutOfChart { u, v: 0.0 });
    }
    Ok(lv(
        (1.0 / u.tan()).ln(),
        (u / 2.0).tan().ln(),
        u.sin().atanh(),
    ))
}

/// `(gamma(u) - gamma(v)) / 2`, on `cosh t = cosh x cosh y`.
pub fn scherk_timelike(u: f64, v: f64) -> Result<Vec3, CatalogError> {
    let (a, b) = match (scherk_null_point(u), scherk_null_point(v)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(CatalogError::OutOfChart { u, v }),
    };
    Ok((a - b).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn s_plus(p: &Vec3) -> f64 {
        p.t.cos() - p.x.cos() * p.y.cos()
    }

    #[test]
    fn maxface_examples() {
        let p = scherk_maxface(C64::new(0.0, 0.0)).unwrap();
        assert_eq!(p, lv(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2));
        assert!(s_plus(&p).abs() < 1e-15);
        assert!(s_plus(&scherk_maxface(C64::new(0.3, 0.0)).unwrap()).abs() < 1e-10);
        for z in [
            C64::new(1.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(-1.0 + 1e-7, 0.0),
        ] {
            assert!(matches!(
                scherk_maxface(z),
                Err(CatalogError::NearBranchPoint { .. })
            ));
        }
        assert!(matches!(
            scherk_maxface(C64::new(0.8, 0.8)),
            Err(CatalogError::OutOfChart { .. })
        ));
    }

    #[test]
    fn maxface_everywhere_on_the_disk() {
        for k in 0..400 {
            let z = C64::from_polar(0.999 * (k as f64 / 400.0).sqrt(), k as f64 * 2.39996);
            assert!(s_plus(&scherk_maxface(z).unwrap()).abs() < 1e-10, "{z}");
            let c = scherk_conjugate(z).unwrap();
            assert!(
                ((-c.t).exp() * c.x.cosh() - c.y.cosh()).abs() < 1e-9 * c.y.cosh(),
                "{z}"
            );
        }
    }

    #[test]
    fn timelike_chain() {
        for &(u, v) in &[(0.3, 0.9), (0.1, 1.4), (1.2, 0.2), (0.7, 0.7)] {
            let p = scherk_timelike(u, v).unwrap();
            assert!((p.t.cosh() - p.x.cosh() * p.y.cosh()).abs() < 1e-10);
            let chain = (u + v).sin() / ((2.0 * u).sin() * (2.0 * v).sin()).sqrt();
            assert!((p.t.cosh() - chain).abs() < 1e-10);
        }
        let d = scherk_timelike(0.4, 0.4).unwrap();
        assert_eq!(d.t, 0.0);
        assert!(scherk_timelike(0.0, 0.3).is_err());
        assert!(scherk_timelike(0.3, PI).is_err());
    }

    #[test]
    fn null_curve_matches_the_log_quotient_form() {
        for &u in &[0.2, 0.8, 1.3] {
            let g = scherk_null_point(u).unwrap();
            let x = 0.5 * ((1.0 - u.cos()) / (1.0 + u.cos())).ln();
            let y = 0.5 * ((1.0 + u.sin()) / (1.0 - u.sin())).ln();
            assert!((g.x - x).abs() < 1e-14 && (g.y - y).abs() < 1e-14);
        }
    }
}
