//! Closed-form graphs with analytic 2-jets.

use super::{GraphError, GraphJet, GraphSource};
use crate::scalar::log_cosh;
use crate::Real;

/// `t = y tanh x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CZero;

impl<S: Real> GraphSource<S> for CZero {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        Ok(y * x.tanh())
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        let th = x.tanh();
        let sech2 = S::one() - th * th;
        Ok(GraphJet {
            f: y * th,
            fx: y * sech2,
            fy: th,
            fxx: S::lit(-2.0) * y * sech2 * th,
            fxy: sech2,
            fyy: S::zero(),
        })
    }

    fn label(&self) -> String {
        "C_zero".into()
    }
}

/// `t = log cosh y - log cosh x`, i.e. `e^t cosh x = cosh y`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SZero;

impl<S: Real> GraphSource<S> for SZero {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        Ok(log_cosh(y) - log_cosh(x))
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        let (tx, ty) = (x.tanh(), y.tanh());
        Ok(GraphJet {
            f: log_cosh(y) - log_cosh(x),
            fx: -tx,
            fy: ty,
            fxx: -(S::one() - tx * tx),
            fxy: S::zero(),
            fyy: S::one() - ty * ty,
        })
    }

    fn label(&self) -> String {
        "S_zero".into()
    }
}

/// Angle function of the helicoid `x sin t = y cos t`, with values in
/// `(center - pi, center + pi]`. Undefined at the origin.
#[derive(Debug, Clone, Copy)]
pub struct HelicoidGraph<S> {
    pub center: S,
}

impl<S: Real> Default for HelicoidGraph<S> {
    fn default() -> Self {
        Self { center: S::zero() }
    }
}

impl<S: Real> HelicoidGraph<S> {
    fn angle(&self, x: S, y: S) -> Result<S, GraphError> {
        if x == S::zero() && y == S::zero() {
            return Err(GraphError::OutOfDomain { x: 0.0, y: 0.0 });
        }
        // rotate by -center so the cut sits opposite the center direction
        let (c, s) = (self.center.cos(), self.center.sin());
        let (xr, yr) = (c * x + s * y, c * y - s * x);
        Ok(self.center + yr.atan2(xr))
    }
}

impl<S: Real> GraphSource<S> for HelicoidGraph<S> {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        self.angle(x, y)
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        let f = self.angle(x, y)?;
        let r2 = x * x + y * y;
        let r4 = r2 * r2;
        let two = S::lit(2.0);
        Ok(GraphJet {
            f,
            fx: -y / r2,
            fy: x / r2,
            fxx: two * x * y / r4,
            fxy: (y * y - x * x) / r4,
            fyy: -two * x * y / r4,
        })
    }

    fn label(&self) -> String {
        "helicoid".into()
    }
}

/// `t = a x + b y + c`.
#[derive(Debug, Clone, Copy)]
pub struct Plane<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Real> Plane<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Self { a, b, c }
    }
}

impl<S: Real> GraphSource<S> for Plane<S> {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        Ok(self.a * x + self.b * y + self.c)
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        Ok(GraphJet {
            f: self.a * x + self.b * y + self.c,
            fx: self.a,
            fy: self.b,
            ..GraphJet::default()
        })
    }

    fn label(&self) -> String {
        "plane".into()
    }
}

/// `t = c + g . p + p^T H p / 2` with `H = [[hxx, hxy], [hxy, hyy]]`.
#[derive(Debug, Clone, Copy)]
pub struct Quadratic<S> {
    pub c: S,
    pub g: [S; 2],
    /// `[hxx, hxy, hyy]`.
    pub h: [S; 3],
}

impl<S: Real> Quadratic<S> {
    pub fn new(c: S, g: [S; 2], h: [S; 3]) -> Self {
        Self { c, g, h }
    }
}

impl<S: Real> GraphSource<S> for Quadratic<S> {
    fn value(&self, x: S, y: S) -> Result<S, GraphError> {
        let [hxx, hxy, hyy] = self.h;
        let half = S::lit(0.5);
        Ok(self.c
            + self.g[0] * x
            + self.g[1] * y
            + half * (hxx * x * x + S::lit(2.0) * hxy * x * y + hyy * y * y))
    }

    fn jet(&self, x: S, y: S) -> Result<GraphJet<S>, GraphError> {
        let [hxx, hxy, hyy] = self.h;
        Ok(GraphJet {
            f: self.value(x, y)?,
            fx: self.g[0] + hxx * x + hxy * y,
            fy: self.g[1] + hxy * x + hyy * y,
            fxx: hxx,
            fxy: hxy,
            fyy: hyy,
        })
    }

    fn label(&self) -> String {
        "quadratic".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check<G: GraphSource<f64>>(g: &G, x: f64, y: f64) {
        let h = 1e-4;
        let j = g.jet(x, y).unwrap();
        let v = |x: f64, y: f64| g.value(x, y).unwrap();
        let fx = (v(x + h, y) - v(x - h, y)) / (2.0 * h);
        let fy = (v(x, y + h) - v(x, y - h)) / (2.0 * h);
        let jx = g.jet(x + h, y).unwrap();
        let jxm = g.jet(x - h, y).unwrap();
        let jy = g.jet(x, y + h).unwrap();
        let jym = g.jet(x, y - h).unwrap();
        assert!((fx - j.fx).abs() < 1e-7 && (fy - j.fy).abs() < 1e-7);
        assert!(((jx.fx - jxm.fx) / (2.0 * h) - j.fxx).abs() < 1e-7);
        assert!(((jy.fx - jym.fx) / (2.0 * h) - j.fxy).abs() < 1e-7);
        assert!(((jy.fy - jym.fy) / (2.0 * h) - j.fyy).abs() < 1e-7);
    }

    #[test]
    fn jets_match_differences() {
        fd_check(&CZero, 0.4, -1.1);
        fd_check(&SZero, -0.7, 1.3);
        fd_check(&HelicoidGraph::default(), 1.2, 0.6);
        fd_check(&HelicoidGraph { center: 3.0 }, -1.2, 0.1);
        fd_check(
            &Quadratic::new(1.0, [0.5, -0.2], [1.0, 0.3, -2.0]),
            0.2,
            0.9,
        );
    }

    #[test]
    fn helicoid_branch_follows_center() {
        let g = HelicoidGraph {
            center: std::f64::consts::PI,
        };
        let v = g.value(-1.0, -1e-9).unwrap();
        assert!(v > std::f64::consts::PI);
        assert!(g.value(0.0, 0.0).is_err());
    }

    #[test]
    fn s_zero_is_stable_far_out() {
        let v: f64 = SZero.value(400.0, 401.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }
}
