//! 2×2 real matrices.

use core::ops::{Add, Mul, Sub};
#[allow(unused_imports)]
use num_traits::Float;

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_columns(c0: [f64; 2], c1: [f64; 2]) -> Self {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    pub fn diagonal(a: f64, d: f64) -> Self {
        Mat2([[a, 0.0], [0.0, d]])
    }

    /// `a bᵀ`
    pub fn outer(a: [f64; 2], b: [f64; 2]) -> Self {
        Mat2([[a[0] * b[0], a[0] * b[1]], [a[1] * b[0], a[1] * b[1]]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn det(&self) -> f64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2([[a, c], [b, d]])
    }

    pub fn scale(&self, s: f64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2([[s * a, s * b], [s * c, s * d]])
    }

    /// Closed-form inverse; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        Some(Mat2([[d / det, -b / det], [-c / det, a / det]]))
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let [[a, b], [c, d]] = self.0;
        [a * v[0] + b * v[1], c * v[0] + d * v[1]]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> [f64; 2] {
        let [[a, b], [c, d]] = self.0;
        let off = 0.5 * (b + c);
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + off * off).sqrt();
        [mean - half_gap, mean + half_gap]
    }

    /// Singular values, ascending.
    pub fn singular_values(&self) -> [f64; 2] {
        let ata = self.transpose() * *self;
        let [lo, hi] = ata.symmetric_eigenvalues();
        let hi = hi.max(0.0).sqrt();
        // det gives the small one without cancellation
        let lo = if hi > 0.0 { self.det().abs() / hi } else { lo.max(0.0).sqrt() };
        [lo, hi]
    }

    /// Spectral condition number `σ_max / σ_min`.
    pub fn condition_number(&self) -> f64 {
        let [lo, hi] = self.singular_values();
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = o.0;
        Mat2([[a + e, b + f], [c + g, d + h]])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let m = |i: usize, j: usize| self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
        Mat2([[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]])
    }
}
