//! Quadratic contact of the parabolic completions with the light-like line
//! `L = {y = x + t = 0}`.

use super::CatalogError;

/// Which completion `F_+-` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// `(x + t){12(x - t) - (x + t)^3} + 12 y^2`.
    Plus,
    /// `(x + t){12(x - t) + (x + t)^3} + 12 y^2`.
    Minus,
}

impl Completion {
    fn sign(self) -> f64 {
        match self {
            Completion::Plus => -1.0,
            Completion::Minus => 1.0,
        }
    }

    pub fn eval(self, t: f64, x: f64, y: f64) -> f64 {
        let s = x + t;
        s * (12.0 * (x - t) + self.sign() * s * s * s) + 12.0 * y * y
    }

    fn dt(self, t: f64, x: f64) -> f64 {
        let s = x + t;
        -24.0 * t + 4.0 * self.sign() * s * s * s
    }
}

fn solve_t(kind: Completion, c: f64, y: f64) -> Result<f64, CatalogError> {
    let mut t = -c;
    for _ in 0..50 {
        let d = kind.eval(t, c, y) / kind.dt(t, c);
        t -= d;
        if !t.is_finite() {
            break;
        }
        if d.abs() <= 1e-15 * (1.0 + t.abs()) {
            return Ok(t);
        }
    }
    Err(CatalogError::NewtonFailed { c, y })
}

/// Quadratic coefficient `q(c)` of `t(c, y) + c ~ q(c) y^2` on `F_+ = 0`.
pub fn alpha0_ii_contact(c: f64) -> Result<f64, CatalogError> {
    alpha0_ii_contact_with(Completion::Plus, c)
}

/// Solves `F(t, c, y) = 0` at `y in {+-h, +-2h}`, `h = 1e-3`, and eliminates
/// the quartic term: `q = (16 G1 - G2) / (12 h^2)` with `Gk` the mean offset at `+-kh`.
pub fn alpha0_ii_contact_with(kind: Completion, c: f64) -> Result<f64, CatalogError> {
    if !(c.abs() >= 0.1 && c.abs() <= 10.0) {
        return Err(CatalogError::InvalidContactParameter(c));
    }
    let h = 1e-3;
    let offset = |y: f64| solve_t(kind, c, y).map(|t| t + c);
    let g1 = 0.5 * (offset(h)? + offset(-h)?);
    let g2 = 0.5 * (offset(2.0 * h)? + offset(-2.0 * h)?);
    Ok((16.0 * g1 - g2) / (12.0 * h * h))
}
