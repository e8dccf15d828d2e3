//! Structured parameter grids sampled in parallel over rows.

use rayon::prelude::*;
use zmc_core::Vec3;

use crate::ForgeError;

/// Named polyline carried along with a grid (type-change curves, light-like lines).
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPolyline {
    pub name: String,
    pub points: Vec<Vec3>,
}

/// Vertices of a map sampled on a `nu x nv` grid, row-major in `v`
/// (vertex `(i, j)` at index `j * nu + i`).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub nu: usize,
    pub nv: usize,
    pub vertices: Vec<Vec3>,
    /// False where the map failed; such vertices sit at the origin and are left out of faces.
    pub valid: Vec<bool>,
    pub scalars: Vec<(String, Vec<f64>)>,
    pub polylines: Vec<MarkedPolyline>,
}

/// Parses `NxM`.
pub fn parse_resolution(s: &str) -> Result<(usize, usize), ForgeError> {
    let bad = || ForgeError::Usage(format!("resolution must look like 64x64, got '{s}'"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let nu: usize = a.trim().parse().map_err(|_| bad())?;
    let nv: usize = b.trim().parse().map_err(|_| bad())?;
    if nu < 2 || nv < 2 {
        return Err(ForgeError::Usage(format!(
            "resolution needs at least 2 nodes per side, got '{s}'"
        )));
    }
    Ok((nu, nv))
}

/// `n` equispaced nodes from `a` to `b` inclusive.
pub fn nodes(range: (f64, f64), n: usize) -> Vec<f64> {
    let step = (range.1 - range.0) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            if k + 1 == n {
                range.1
            } else {
                range.0 + step * k as f64
            }
        })
        .collect()
}

/// Thread pool capped by `ZMC_THREADS` when it is set to a positive integer.
pub fn thread_pool() -> Result<rayon::ThreadPool, ForgeError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ZMC_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            ForgeError::Usage(format!("ZMC_THREADS must be a positive integer, got '{v}'"))
        })?;
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| ForgeError::Usage(format!("thread pool: {e}")))
}

/// Runs `f` on every node of the grid; `f` returns the vertex and one value per
/// name in `scalar_names`, or `None` where the map is undefined.
pub fn sample<F>(
    u_range: (f64, f64),
    v_range: (f64, f64),
    nu: usize,
    nv: usize,
    scalar_names: &[&str],
    f: F,
) -> Result<SampleGrid, ForgeError>
where
    F: Fn(f64, f64) -> Option<(Vec3, Vec<f64>)> + Sync,
{
    if nu < 2 || nv < 2 {
        return Err(ForgeError::Usage(format!(
            "grid {nu}x{nv} needs at least 2 nodes per side"
        )));
    }
    let us = nodes(u_range, nu);
    let vs = nodes(v_range, nv);
    let k = scalar_names.len();
    let rows: Vec<Vec<Option<(Vec3, Vec<f64>)>>> = thread_pool()?.install(|| {
        vs.par_iter()
            .map(|&v| {
                us.iter()
                    .map(|&u| f(u, v).filter(|(_, s)| s.len() == k))
                    .collect()
            })
            .collect()
    });
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut valid = Vec::with_capacity(nu * nv);
    let mut columns = vec![Vec::with_capacity(nu * nv); k];
    for cell in rows.into_iter().flatten() {
        match cell {
            Some((p, s)) => {
                vertices.push(p);
                valid.push(true);
                for (c, x) in columns.iter_mut().zip(s) {
                    c.push(x);
                }
            }
            None => {
                vertices.push(Vec3::zero());
                valid.push(false);
                for c in columns.iter_mut() {
                    c.push(f64::NAN);
                }
            }
        }
    }
    Ok(SampleGrid {
        u_range,
        v_range,
        nu,
        nv,
        vertices,
        valid,
        scalars: scalar_names
            .iter()
            .map(|s| s.to_string())
            .zip(columns)
            .collect(),
        polylines: Vec::new(),
    })
}

impl SampleGrid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn params(&self) -> (Vec<f64>, Vec<f64>) {
        (nodes(self.u_range, self.nu), nodes(self.v_range, self.nv))
    }

    pub fn scalar(&self, name: &str) -> Option<&[f64]> {
        self.scalars
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    /// Quads `(i, j), (i+1, j), (i+1, j+1), (i, j+1)` whose corners are all valid.
    pub fn faces(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for j in 0..self.nv - 1 {
            for i in 0..self.nu - 1 {
                let q = [
                    self.index(i, j),
                    self.index(i + 1, j),
                    self.index(i + 1, j + 1),
                    self.index(i, j + 1),
                ];
                if q.iter().all(|&k| self.valid[k]) {
                    out.push(q);
                }
            }
        }
        out
    }

    /// Largest absolute value of a scalar over valid vertices.
    pub fn max_abs(&self, name: &str) -> Option<f64> {
        let s = self.scalar(name)?;
        Some(
            s.iter()
                .zip(&self.valid)
                .filter(|(_, &ok)| ok)
                .fold(
                    0.0f64,
                    |m, (&x, _)| if x.is_nan() { f64::NAN } else { m.max(x.abs()) },
                ),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_parsing() {
        assert_eq!(parse_resolution("64x32").unwrap(), (64, 32));
        assert_eq!(parse_resolution("3X2").unwrap(), (3, 2));
        for bad in ["64", "x3", "1x5", "ax2", ""] {
            assert!(parse_resolution(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn nodes_hit_both_ends() {
        let n = nodes((0.1, 0.7), 7);
        assert_eq!(n[0], 0.1);
        assert_eq!(n[6], 0.7);
        assert!((n[3] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn layout_and_invalid_vertices() {
        let g = sample((0.0, 1.0), (0.0, 2.0), 3, 4, &["s"], |u, v| {
            (u + v < 2.9).then(|| (Vec3::new(u * v, u, v), vec![u - v]))
        })
        .unwrap();
        assert_eq!(g.vertices.len(), 12);
        assert_eq!(
            g.vertices[g.index(2, 1)],
            Vec3::new(2.0 / 3.0, 1.0, 2.0 / 3.0)
        );
        assert!(!g.valid[g.index(2, 3)]);
        assert!(g.scalar("s").unwrap()[g.index(2, 3)].is_nan());
        // the top-right quad touches the invalid corner
        assert_eq!(g.faces().len(), 5);
        assert_eq!(g.max_abs("s"), Some(2.0));
    }
}
