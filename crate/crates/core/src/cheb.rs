//! Piecewise Chebyshev series with complex evaluation.
//!
//! Table-backed curves store one series per panel and are continued off the
//! real axis by evaluating the series at complex arguments, which is accurate
//! inside the Bernstein ellipse of analyticity of each panel.

use num_complex::Complex;

use crate::Real;

#[derive(Debug, Clone)]
struct Panel<S, const D: usize> {
    a: S,
    b: S,
    /// `coeffs[m]` holds the series of the m-th derivative.
    coeffs: Vec<Vec<[S; D]>>,
}

#[derive(Debug, Clone)]
pub struct PiecewiseChebyshev<S, const D: usize> {
    panels: Vec<Panel<S, D>>,
    max_order: usize,
}

fn lobatto_coefficients<S: Real, const D: usize>(values: &[[S; D]]) -> Vec<[S; D]> {
    let n = values.len() - 1;
    let nn = S::lit(n as f64);
    let two = S::lit(2.0);
    let mut out = vec![[S::zero(); D]; n + 1];
    for (k, ck) in out.iter_mut().enumerate() {
        for (j, fj) in values.iter().enumerate() {
            let mut w = (S::PI() * S::lit((j * k) as f64) / nn).cos();
            if j == 0 || j == n {
                w = w / two;
            }
            for d in 0..D {
                ck[d] = ck[d] + w * fj[d];
            }
        }
        let scale = if k == 0 || k == n {
            S::one() / nn
        } else {
            two / nn
        };
        for c in ck.iter_mut() {
            *c = *c * scale;
        }
    }
    out
}

fn chop<S: Real, const D: usize>(c: &mut Vec<[S; D]>) {
    let big = c
        .iter()
        .flat_map(|a| a.iter())
        .fold(S::zero(), |m, v| m.max(v.abs()));
    let floor = big * S::epsilon() * S::lit(4.0);
    while c.len() > 1 && c.last().unwrap().iter().all(|v| v.abs() <= floor) {
        c.pop();
    }
}

fn differentiate<S: Real, const D: usize>(c: &[[S; D]], half_len: S) -> Vec<[S; D]> {
    let n = c.len() - 1;
    if n == 0 {
        return vec![[S::zero(); D]];
    }
    let mut d = vec![[S::zero(); D]; n + 1];
    for k in (0..n).rev() {
        for comp in 0..D {
            let next2 = if k + 2 <= n {
                d[k + 2][comp]
            } else {
                S::zero()
            };
            d[k][comp] = next2 + S::lit(2.0 * (k + 1) as f64) * c[k + 1][comp];
        }
    }
    for comp in 0..D {
        d[0][comp] = d[0][comp] / S::lit(2.0);
    }
    d.pop();
    for row in d.iter_mut() {
        for v in row.iter_mut() {
            *v = *v / half_len;
        }
    }
    d
}

fn clenshaw<S: Real, const D: usize>(c: &[[S; D]], xi: Complex<S>) -> [Complex<S>; D] {
    let zero = Complex::new(S::zero(), S::zero());
    let mut out = [zero; D];
    let two_xi = xi * S::lit(2.0);
    for (comp, o) in out.iter_mut().enumerate() {
        let (mut b1, mut b2) = (zero, zero);
        for k in (1..c.len()).rev() {
            let b0 = two_xi * b1 - b2 + c[k][comp];
            b2 = b1;
            b1 = b0;
        }
        *o = xi * b1 - b2 + c[0][comp];
    }
    out
}

impl<S: Real, const D: usize> PiecewiseChebyshev<S, D> {
    /// Samples `f` at `nodes_per_panel` Chebyshev-Lobatto points on each of
    /// `n_panels` equal panels of `[a, b]` and stores derivative series up to `max_order`.
    pub fn fit(
        a: S,
        b: S,
        n_panels: usize,
        nodes_per_panel: usize,
        max_order: usize,
        mut f: impl FnMut(S) -> [S; D],
    ) -> Self {
        assert!(n_panels >= 1 && nodes_per_panel >= 2 && b > a);
        let width = (b - a) / S::lit(n_panels as f64);
        let n = nodes_per_panel - 1;
        let panels = (0..n_panels)
            .map(|p| {
                let pa = a + width * S::lit(p as f64);
                let pb = if p + 1 == n_panels { b } else { pa + width };
                let mid = (pa + pb) / S::lit(2.0);
                let half = (pb - pa) / S::lit(2.0);
                let values: Vec<[S; D]> = (0..=n)
                    .map(|j| {
                        let x = (S::PI() * S::lit(j as f64) / S::lit(n as f64)).cos();
                        f(mid + half * x)
                    })
                    .collect();
                Self::panel_from_values(pa, pb, &values, max_order)
            })
            .collect();
        Self { panels, max_order }
    }

    /// Builds the table from caller-computed values at the Lobatto nodes of each panel.
    /// `values[p][j]` is the value at `cos(pi j / n)` mapped into panel `p`.
    pub fn from_lobatto_values(a: S, b: S, values: &[Vec<[S; D]>], max_order: usize) -> Self {
        let n_panels = values.len();
        let width = (b - a) / S::lit(n_panels as f64);
        let panels = values
            .iter()
            .enumerate()
            .map(|(p, v)| {
                let pa = a + width * S::lit(p as f64);
                let pb = if p + 1 == n_panels { b } else { pa + width };
                Self::panel_from_values(pa, pb, v, max_order)
            })
            .collect();
        Self { panels, max_order }
    }

    /// Lobatto nodes of panel `p` for a table of `n_panels` over `[a, b]`.
    pub fn lobatto_nodes(a: S, b: S, n_panels: usize, nodes_per_panel: usize, p: usize) -> Vec<S> {
        let width = (b - a) / S::lit(n_panels as f64);
        let pa = a + width * S::lit(p as f64);
        let pb = if p + 1 == n_panels { b } else { pa + width };
        let mid = (pa + pb) / S::lit(2.0);
        let half = (pb - pa) / S::lit(2.0);
        let n = nodes_per_panel - 1;
        (0..=n)
            .map(|j| mid + half * (S::PI() * S::lit(j as f64) / S::lit(n as f64)).cos())
            .collect()
    }

    fn panel_from_values(a: S, b: S, values: &[[S; D]], max_order: usize) -> Panel<S, D> {
        let mut c0 = lobatto_coefficients(values);
        chop(&mut c0);
        let half = (b - a) / S::lit(2.0);
        let mut coeffs = vec![c0];
        for m in 0..max_order {
            let d = differentiate(&coeffs[m], half);
            coeffs.push(d);
        }
        Panel { a, b, coeffs }
    }

    pub fn domain(&self) -> (S, S) {
        (self.panels[0].a, self.panels.last().unwrap().b)
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Smallest panel half-width; sets the usable strip around the real axis.
    pub fn min_half_width(&self) -> S {
        self.panels
            .iter()
            .fold(S::infinity(), |m, p| m.min((p.b - p.a) / S::lit(2.0)))
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }

    fn panel_for(&self, re: S) -> &Panel<S, D> {
        let idx = self
            .panels
            .iter()
            .position(|p| re <= p.b)
            .unwrap_or(self.panels.len() - 1);
        &self.panels[idx]
    }

    /// `order`-th derivative at complex `z`. Panics if `order > max_order`.
    pub fn eval(&self, z: Complex<S>, order: usize) -> [Complex<S>; D] {
        assert!(
            order <= self.max_order,
            "derivative order {order} not tabulated"
        );
        let p = self.panel_for(z.re);
        let mid = (p.a + p.b) / S::lit(2.0);
        let half = (p.b - p.a) / S::lit(2.0);
        let xi = (z - mid) / half;
        clenshaw(&p.coeffs[order], xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_exp_and_its_derivatives_off_axis() {
        let t = PiecewiseChebyshev::<f64, 1>::fit(-1.0, 2.0, 3, 24, 3, |x| [x.exp()]);
        for &(re, im) in &[(-0.9, 0.0), (0.3, 0.1), (1.7, -0.2)] {
            let z = Complex::new(re, im);
            for m in 0..=3 {
                let got = t.eval(z, m)[0];
                // differentiation amplifies coefficient roundoff by about k^2 per order
                let tol = 1e-11 * 10f64.powi(m as i32);
                assert!((got - z.exp()).norm() < tol, "order {m} at {z}: {got}");
            }
        }
    }

    #[test]
    fn polynomial_is_exact_after_chop() {
        let t = PiecewiseChebyshev::<f64, 2>::fit(0.0, 1.0, 1, 17, 2, |x| [x * x, 3.0 - x]);
        let z = Complex::new(0.25, 0.5);
        let v = t.eval(z, 0);
        assert!((v[0] - z * z).norm() < 1e-14);
        assert!((v[1] - (Complex::new(3.0, 0.0) - z)).norm() < 1e-14);
        assert!((t.eval(z, 2)[0] - Complex::new(2.0, 0.0)).norm() < 1e-12);
    }
}
