use crate::lorentz::ComplexVec3;
use crate::{CVec3, Vec3, C64};

/// Lorentz isometry `p -> M p + shift` with `M` a signed permutation fixing
/// the time axis (time reversal, reflections, quarter turns in `(x, y)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub matrix: [[f64; 3]; 3],
    pub shift: [f64; 3],
}

impl Default for Isometry {
    fn default() -> Self {
        Self::identity()
    }
}

impl Isometry {
    pub const fn identity() -> Self {
        Self {
            matrix: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            shift: [0.0; 3],
        }
    }

    /// `(t, x, y) -> (st t, sx x, sy y)`.
    pub const fn signs(st: f64, sx: f64, sy: f64) -> Self {
        Self {
            matrix: [[st, 0.0, 0.0], [0.0, sx, 0.0], [0.0, 0.0, sy]],
            shift: [0.0; 3],
        }
    }

    pub const fn time_reversal() -> Self {
        Self::signs(-1.0, 1.0, 1.0)
    }

    pub const fn point_reflection() -> Self {
        Self::signs(-1.0, -1.0, -1.0)
    }

    /// `(x, y) -> (-y, x)`.
    pub const fn quarter_turn() -> Self {
        Self {
            matrix: [[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]],
            shift: [0.0; 3],
        }
    }

    pub const fn with_shift(mut self, shift: [f64; 3]) -> Self {
        self.shift = shift;
        self
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        let a = p.to_array();
        let m = &self.matrix;
        let row = |i: usize| m[i][0] * a[0] + m[i][1] * a[1] + m[i][2] * a[2] + self.shift[i];
        Vec3::new(row(0), row(1), row(2))
    }

    /// Linear part on complex vectors, shift on the real part.
    pub fn apply_complex(&self, p: &CVec3) -> CVec3 {
        let a = [p.t, p.x, p.y];
        let m = &self.matrix;
        let row = |i: usize| {
            a[0] * m[i][0] + a[1] * m[i][1] + a[2] * m[i][2] + C64::new(self.shift[i], 0.0)
        };
        ComplexVec3::new(row(0), row(1), row(2))
    }
}
