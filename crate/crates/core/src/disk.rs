//! Geometry of the Poincaré disk with metric `4|dz|²/(1−|z|²)²` (curvature −1).
//!
//! Busemann functions are normalized at the origin `O`:
//! `B_θ(x) = B_θ(x, O) = log(|x − θ|² / (1 − |x|²))`. With this normalization
//! the Poisson kernel is exactly `e^{−B_θ(x)}`, the gradient of every Busemann
//! function is a unit vector and its Laplacian is identically 1.
//!
//! Tangent data at a point `x` is expressed in the *canonical frame*: the
//! image of the axial frame at `O` under the translation `z ↦ (z + x)/(1 + x̄z)`.
//! That translation has positive real derivative at 0, so the canonical frame
//! is the axial frame scaled to hyperbolic unit length, `(1 − |x|²)/2` per leg.

use core::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::Mat2;
use crate::{Error, Result};

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    u: f64,
    v: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { u: 0.0, v: 0.0 };

    pub fn new(u: f64, v: f64) -> Result<Self> {
        if u.is_finite() && v.is_finite() && u * u + v * v < 1.0 {
            Ok(DiskPoint { u, v })
        } else {
            Err(Error::OutsideDisk { u, v })
        }
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// Point at hyperbolic distance `distance` from `O` in direction `angle`.
    pub fn from_polar(distance: f64, angle: f64) -> Result<Self> {
        if !(distance >= 0.0) || !distance.is_finite() {
            return Err(Error::Domain { what: "distance", value: distance, domain: "[0, ∞)" });
        }
        let r = (0.5 * distance).tanh();
        Self::new(r * angle.cos(), r * angle.sin())
    }

    #[inline]
    pub fn u(&self) -> f64 {
        self.u
    }

    #[inline]
    pub fn v(&self) -> f64 {
        self.v
    }

    #[inline]
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// `(1 − |z|²)/2`, the Euclidean length of a hyperbolic unit vector at `z`.
    #[inline]
    pub fn unit_scale(&self) -> f64 {
        0.5 * (1.0 - self.norm_sqr())
    }

    pub fn distance_from_origin(&self) -> f64 {
        2.0 * self.norm_sqr().sqrt().atanh()
    }

    /// Euclidean distance, used for reporting pointwise gaps.
    pub fn euclidean_distance(&self, other: &DiskPoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }

    /// Interior points that rounding pushed onto the circle are pulled back in.
    pub(crate) fn from_complex_clamped(z: Complex64) -> Self {
        let r2 = z.norm_sqr();
        if r2 < 1.0 {
            DiskPoint { u: z.re, v: z.im }
        } else {
            let s = (1.0 - f64::EPSILON) / r2.sqrt();
            DiskPoint { u: z.re * s, v: z.im * s }
        }
    }
}

/// An ideal boundary point, stored as an angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        BoundaryPoint { theta: normalize_angle(theta) }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.im.atan2(z.re))
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn unit(&self) -> Complex64 {
        let (s, c) = self.theta.sin_cos();
        Complex64::new(c, s)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = num_traits::Euclid::rem_euclid(&theta, &TAU);
    // rem_euclid can round up to exactly TAU
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A tangent vector with Euclidean components `(a, b)` at `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub base: DiskPoint,
    pub a: f64,
    pub b: f64,
}

impl TangentVector {
    pub fn new(base: DiskPoint, a: f64, b: f64) -> Self {
        TangentVector { base, a, b }
    }

    /// Builds a vector from its coordinates in the canonical frame at `base`.
    pub fn from_frame(base: DiskPoint, coords: [f64; 2]) -> Self {
        let s = base.unit_scale();
        TangentVector { base, a: coords[0] * s, b: coords[1] * s }
    }

    /// Coordinates in the canonical frame at the base point.
    pub fn frame_coords(&self) -> [f64; 2] {
        let s = self.base.unit_scale();
        [self.a / s, self.b / s]
    }

    pub fn hyperbolic_norm(&self) -> f64 {
        self.a.hypot(self.b) / self.base.unit_scale()
    }
}

/// An orthonormal frame at a point, given as a rotation (and optional flip)
/// of the canonical frame there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub base: DiskPoint,
    pub rotation: f64,
    pub flipped: bool,
}

impl Frame {
    pub fn canonical(base: DiskPoint) -> Self {
        Frame { base, rotation: 0.0, flipped: false }
    }

    pub fn rotated(base: DiskPoint, rotation: f64) -> Self {
        Frame { base, rotation, flipped: false }
    }

    /// Canonical-frame coordinates of the frame legs, as matrix columns.
    fn legs(&self) -> Mat2 {
        let (s, c) = self.rotation.sin_cos();
        let e2_sign = if self.flipped { -1.0 } else { 1.0 };
        Mat2::from_columns([c, s], [-s * e2_sign, c * e2_sign])
    }

    /// Coordinates of `v` in this frame.
    pub fn coords(&self, v: &TangentVector) -> [f64; 2] {
        self.legs().transpose().apply(v.frame_coords())
    }

    pub fn vector(&self, coords: [f64; 2]) -> TangentVector {
        TangentVector::from_frame(self.base, self.legs().apply(coords))
    }
}

/// `z ↦ e^{iα}(w − c)/(1 − c̄w)` with `w = z̄` when `reflect` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusIsometry {
    rotation: f64,
    center: Complex64,
    reflect: bool,
}

impl MobiusIsometry {
    pub const IDENTITY: MobiusIsometry =
        MobiusIsometry { rotation: 0.0, center: Complex64 { re: 0.0, im: 0.0 }, reflect: false };

    pub fn new(rotation: f64, center_re: f64, center_im: f64, reflect: bool) -> Result<Self> {
        let center = Complex64::new(center_re, center_im);
        let r = center.norm();
        if !(r < 1.0) || !rotation.is_finite() {
            return Err(Error::InvalidMobius(r));
        }
        Ok(MobiusIsometry { rotation, center, reflect })
    }

    /// Orientation-preserving isometry taking `O` to `x` whose derivative at
    /// `O` is a positive real. It carries the canonical frame at `O` onto the
    /// canonical frame at `x`.
    pub fn translation_to(x: DiskPoint) -> Self {
        MobiusIsometry { rotation: 0.0, center: -x.to_complex(), reflect: false }
    }

    /// Isometry `O ↦ x` composed with a rotation by `angle` about `O`.
    pub fn to_point_rotated(x: DiskPoint, angle: f64) -> Self {
        Self::translation_to(x).compose(&MobiusIsometry {
            rotation: angle,
            center: Complex64::new(0.0, 0.0),
            reflect: false,
        })
    }

    #[inline]
    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    #[inline]
    pub fn center(&self) -> Complex64 {
        self.center
    }

    #[inline]
    pub fn is_orientation_preserving(&self) -> bool {
        !self.reflect
    }

    fn holomorphic(&self, w: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.rotation) * (w - self.center)
            / (Complex64::new(1.0, 0.0) - self.center.conj() * w)
    }

    fn pre(&self, z: Complex64) -> Complex64 {
        if self.reflect {
            z.conj()
        } else {
            z
        }
    }

    /// Action on the closed disk as a complex function.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        self.holomorphic(self.pre(z))
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        DiskPoint::from_complex_clamped(self.apply_complex(p.to_complex()))
    }

    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint::from_complex(self.apply_complex(p.unit()))
    }

    /// Pushes a tangent vector forward.
    pub fn differential(&self, v: &TangentVector) -> TangentVector {
        let w = self.pre(v.base.to_complex());
        let dv = self.pre(Complex64::new(v.a, v.b));
        let denom = Complex64::new(1.0, 0.0) - self.center.conj() * w;
        let deriv = Complex64::from_polar(1.0, self.rotation) * (1.0 - self.center.norm_sqr()) / (denom * denom);
        let out = deriv * dv;
        TangentVector::new(self.apply(v.base), out.re, out.im)
    }

    /// Matrix `[[a, b], [c, d]]` of the holomorphic part, `w ↦ (aw + b)/(cw + d)`.
    fn matrix(&self) -> [Complex64; 4] {
        let e = Complex64::from_polar(1.0, self.rotation);
        [e, -e * self.center, -self.center.conj(), Complex64::new(1.0, 0.0)]
    }

    fn from_matrix(m: [Complex64; 4], reflect: bool) -> Self {
        let [a, _b, c, d] = m;
        let e = a / d;
        let center = (-c / d).conj();
        MobiusIsometry { rotation: e.arg(), center, reflect }
    }

    /// Parameters of `conj ∘ A ∘ conj`.
    fn conjugated(&self) -> Self {
        MobiusIsometry { rotation: -self.rotation, center: self.center.conj(), reflect: self.reflect }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusIsometry) -> MobiusIsometry {
        // self(other(z)) = A_s(conj^{r_s}(A_o(conj^{r_o} z)))
        let inner = if self.reflect { other.conjugated() } else { *other };
        let [a1, b1, c1, d1] = self.matrix();
        let [a2, b2, c2, d2] = inner.matrix();
        let m = [a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2];
        Self::from_matrix(m, self.reflect ^ other.reflect)
    }

    pub fn inverse(&self) -> MobiusIsometry {
        let [a, b, c, d] = self.matrix();
        let inv = Self::from_matrix([d, -b, -c, a], false);
        if self.reflect {
            // (A ∘ conj)⁻¹ = conj ∘ A⁻¹ = (conj A⁻¹ conj) ∘ conj
            MobiusIsometry { reflect: true, ..inv.conjugated() }
        } else {
            inv
        }
    }
}

/// Hyperbolic distance `2 artanh(|p − q| / |1 − p̄q|)`.
pub fn disk_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let (zp, zq) = (p.to_complex(), q.to_complex());
    let num = (zp - zq).norm();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - zp.conj() * zq).norm();
    2.0 * (num / den).min(1.0).atanh()
}

/// `B_θ(x, O) = log(|x − θ|²/(1 − |x|²))`.
pub fn busemann(theta: BoundaryPoint, x: DiskPoint) -> f64 {
    let d = x.to_complex() - theta.unit();
    d.norm_sqr().ln() - (-x.norm_sqr()).ln_1p()
}

/// Canonical-frame coordinates of `∇B_θ` at `x`.
///
/// Translating `x` back to `O` sends `θ` to `θ' = (θ − x)/(1 − x̄θ)`; at `O` the
/// gradient is the unit vector pointing away from `θ'`.
pub fn busemann_gradient_frame(theta: BoundaryPoint, x: DiskPoint) -> [f64; 2] {
    let t = theta.unit();
    let z = x.to_complex();
    let moved = (t - z) / (Complex64::new(1.0, 0.0) - z.conj() * t);
    let n = moved.norm();
    [-moved.re / n, -moved.im / n]
}

/// Gradient of `B_θ` at `x`, a hyperbolic unit vector pointing away from `θ`.
pub fn busemann_gradient(theta: BoundaryPoint, x: DiskPoint) -> TangentVector {
    TangentVector::from_frame(x, busemann_gradient_frame(theta, x))
}

/// Covariant Hessian `∇dB_θ = g − dB_θ ⊗ dB_θ` at `frame.base`, in `frame`.
pub fn busemann_hessian(theta: BoundaryPoint, frame: &Frame) -> Mat2 {
    let w = frame.coords(&busemann_gradient(theta, frame.base));
    Mat2::IDENTITY - Mat2::outer(w, w)
}

/// Poisson kernel `(1 − |x|²)/|x − θ|² = e^{−B_θ(x)}`.
pub fn poisson_kernel(x: DiskPoint, theta: BoundaryPoint) -> f64 {
    (1.0 - x.norm_sqr()) / (x.to_complex() - theta.unit()).norm_sqr()
}

/// Exponential map at `x`: follows the geodesic with initial velocity given
/// in canonical-frame coordinates for unit time.
pub fn exp_frame(x: DiskPoint, coords: [f64; 2]) -> DiskPoint {
    let len = coords[0].hypot(coords[1]);
    if len == 0.0 {
        return x;
    }
    let r = (0.5 * len).tanh();
    let z = Complex64::new(coords[0] * r / len, coords[1] * r / len);
    MobiusIsometry::translation_to(x).apply(DiskPoint::from_complex_clamped(z))
}

/// Inverse of [`exp_frame`]: canonical-frame coordinates at `x` of the
/// initial velocity of the geodesic from `x` reaching `y` at unit time.
pub fn log_frame(x: DiskPoint, y: DiskPoint) -> [f64; 2] {
    let z = MobiusIsometry::translation_to(x).inverse().apply_complex(y.to_complex());
    let r = z.norm();
    if r == 0.0 {
        return [0.0, 0.0];
    }
    let len = 2.0 * r.atanh();
    [len * z.re / r, len * z.im / r]
}

/// The angle `Θ(s) = arccos(1/cosh s)` at which the geodesic orthogonal to
/// the positive `y`-axis at distance `s` from `O` meets the boundary.
///
/// Evaluated as `arctan(sinh s)` (the Gudermannian), which is the same
/// function without the cancellation of `arccos` near 1.
pub fn theta_of_s(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "s", value: s, domain: "(0, ∞)" });
    }
    Ok(gudermannian(s))
}

/// Inverse of [`theta_of_s`]: `arccosh(1/cos θ)`, evaluated as `arsinh(tan θ)`.
pub fn s_of_theta(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain { what: "theta", value: theta, domain: "(0, π/2)" });
    }
    Ok(inverse_gudermannian(theta))
}

/// `π/2 − Θ(s)` without cancellation.
pub fn theta_complement(s: f64) -> f64 {
    (1.0 / s.sinh()).atan()
}

#[inline]
pub(crate) fn gudermannian(s: f64) -> f64 {
    s.sinh().atan()
}

#[inline]
pub(crate) fn inverse_gudermannian(theta: f64) -> f64 {
    theta.tan().asinh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
    use proptest::prelude::*;

    fn p(u: f64, v: f64) -> DiskPoint {
        DiskPoint::new(u, v).unwrap()
    }

    #[test]
    fn rejects_points_on_or_outside_the_circle() {
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.8, 0.6).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::new(0.5, 0.5).is_ok());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(disk_distance(DiskPoint::ORIGIN, DiskPoint::ORIGIN), 0.0);
        let x = p(0.5, 0.0);
        assert!((disk_distance(DiskPoint::ORIGIN, x) - 3f64.ln()).abs() < 1e-15);
        let g = MobiusIsometry::translation_to(x);
        let q = g.apply(DiskPoint::ORIGIN);
        assert!((disk_distance(DiskPoint::ORIGIN, q) - 3f64.ln()).abs() < 1e-15);
        let d = p(0.3, 0.4);
        assert!((d.distance_from_origin() - disk_distance(DiskPoint::ORIGIN, d)).abs() < 1e-15);
    }

    #[test]
    fn busemann_examples() {
        let b0 = BoundaryPoint::new(0.0);
        assert_eq!(busemann(b0, DiskPoint::ORIGIN), 0.0);
        assert!((busemann(b0, p(0.5, 0.0)) + 3f64.ln()).abs() < 1e-15);
        assert!((busemann(BoundaryPoint::new(PI), p(0.5, 0.0)) - 3f64.ln()).abs() < 1e-15);
        // along the ray toward θ the value is minus the distance
        for t in [0.1, 1.0, 5.0] {
            let x = DiskPoint::from_polar(t, 1.0).unwrap();
            assert!((busemann(BoundaryPoint::new(1.0), x) + t).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_at_origin() {
        let g = busemann_gradient(BoundaryPoint::new(0.0), DiskPoint::ORIGIN);
        assert_eq!((g.a, g.b), (-0.5, 0.0));
        assert!((g.hyperbolic_norm() - 1.0).abs() < 1e-15);
        let g = busemann_gradient(BoundaryPoint::new(FRAC_PI_2), DiskPoint::ORIGIN);
        assert!(g.a.abs() < 1e-16 && (g.b + 0.5).abs() < 1e-16);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let theta = BoundaryPoint::new(0.0);
        let x = p(0.3, 0.4);
        let h = 1e-6;
        let du = (busemann(theta, p(0.3 + h, 0.4)) - busemann(theta, p(0.3 - h, 0.4))) / (2.0 * h);
        let dv = (busemann(theta, p(0.3, 0.4 + h)) - busemann(theta, p(0.3, 0.4 - h))) / (2.0 * h);
        // dB(e_j) = unit_scale * ∂_j B
        let fd = [x.unit_scale() * du, x.unit_scale() * dv];
        let w = busemann_gradient(theta, x).frame_coords();
        assert!((fd[0] - w[0]).abs() < 1e-8 && (fd[1] - w[1]).abs() < 1e-8, "{fd:?} {w:?}");
        assert!((busemann_gradient(theta, x).hyperbolic_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hessian_at_origin() {
        let h = busemann_hessian(BoundaryPoint::new(0.0), &Frame::canonical(DiskPoint::ORIGIN));
        assert!(h.max_abs_diff(&Mat2::new(0.0, 0.0, 0.0, 1.0)) < 1e-16);
    }

    #[test]
    fn hessian_matches_second_differences_at_origin() {
        let theta = BoundaryPoint::new(FRAC_PI_4);
        let hess = busemann_hessian(theta, &Frame::canonical(DiskPoint::ORIGIN));
        let w = [-FRAC_PI_4.cos(), -FRAC_PI_4.sin()];
        assert!(hess.max_abs_diff(&(Mat2::IDENTITY - Mat2::outer(w, w))) < 1e-15);
        // at O the Christoffel symbols vanish; frame legs are 1/2 in Euclidean length
        let b = |u: f64, v: f64| busemann(theta, p(u, v));
        let h = 1e-4;
        let duu = (b(h, 0.0) - 2.0 * b(0.0, 0.0) + b(-h, 0.0)) / (h * h) * 0.25;
        let dvv = (b(0.0, h) - 2.0 * b(0.0, 0.0) + b(0.0, -h)) / (h * h) * 0.25;
        let duv = (b(h, h) - b(h, -h) - b(-h, h) + b(-h, -h)) / (4.0 * h * h) * 0.25;
        let fd = Mat2::new(duu, duv, duv, dvv);
        assert!(fd.max_abs_diff(&hess) < 1e-6, "{fd:?} vs {hess:?}");
    }

    #[test]
    fn hessian_matches_geodesic_second_differences_off_origin() {
        let theta = BoundaryPoint::new(2.0);
        let x = p(-0.2, 0.55);
        let frame = Frame::rotated(x, 0.7);
        let hess = busemann_hessian(theta, &frame);
        let h = 1e-4;
        let along = |c: [f64; 2], t: f64| busemann(theta, exp_frame(x, frame.legs().apply([c[0] * t, c[1] * t])));
        for (i, j) in [(0, 0), (1, 1), (0, 1)] {
            let mut ei = [0.0; 2];
            ei[i] = 1.0;
            let mut ej = [0.0; 2];
            ej[j] = 1.0;
            let plus = [ei[0] + ej[0], ei[1] + ej[1]];
            let minus = [ei[0] - ej[0], ei[1] - ej[1]];
            // polarization: H(a,b) = (Q(a+b) − Q(a−b))/4
            let q = |c: [f64; 2]| (along(c, h) - 2.0 * along(c, 0.0) + along(c, -h)) / (h * h);
            let fd = (q(plus) - q(minus)) / 4.0;
            assert!((fd - hess.get(i, j)).abs() < 1e-5, "({i},{j}) {fd} vs {}", hess.get(i, j));
        }
    }

    #[test]
    fn poisson_examples() {
        for t in [0.0, 1.0, 4.0] {
            assert_eq!(poisson_kernel(DiskPoint::ORIGIN, BoundaryPoint::new(t)), 1.0);
        }
        assert!((poisson_kernel(p(0.5, 0.0), BoundaryPoint::new(0.0)) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn poisson_normalization() {
        let x = p(0.3, 0.4);
        let n = 512;
        let mean: f64 =
            (0..n).map(|k| poisson_kernel(x, BoundaryPoint::new(TAU * k as f64 / n as f64))).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 1e-10);
    }

    #[test]
    fn theta_function_examples() {
        let s = 2f64.acosh();
        assert!((theta_of_s(s).unwrap() - FRAC_PI_3).abs() < 1e-15);
        let small = theta_of_s(1e-4).unwrap() / 1e-4;
        assert!((1.0 - 1e-6..=1.0).contains(&small));
        let big = (FRAC_PI_2 - theta_of_s(20.0).unwrap()) / (2.0 * (-20f64).exp());
        assert!((big - 1.0).abs() < 1e-6, "{big}");
        assert!(((theta_complement(20.0)) / (2.0 * (-20f64).exp()) - 1.0).abs() < 1e-12);
        assert!(theta_of_s(0.0).is_err() && theta_of_s(-1.0).is_err());
        assert!(s_of_theta(0.0).is_err() && s_of_theta(FRAC_PI_2).is_err());
    }

    #[test]
    fn mobius_identity_and_inverse() {
        let x = p(0.3, -0.2);
        assert_eq!(MobiusIsometry::IDENTITY.apply(x), x);
        assert!(MobiusIsometry::new(0.0, 0.6, 0.8, false).is_err());
        let g = MobiusIsometry::new(1.1, 0.4, -0.3, true).unwrap();
        let y = g.compose(&g.inverse()).apply(x);
        assert!(y.euclidean_distance(&x) < 1e-14);
        let y = g.inverse().compose(&g).apply(x);
        assert!(y.euclidean_distance(&x) < 1e-14);
    }

    fn isometry() -> impl Strategy<Value = MobiusIsometry> {
        (-PI..PI, 0.0..0.9f64, -PI..PI, any::<bool>())
            .prop_map(|(a, r, t, refl)| MobiusIsometry::new(a, r * t.cos(), r * t.sin(), refl).unwrap())
    }

    fn point() -> impl Strategy<Value = DiskPoint> {
        (0.0..0.95f64, -PI..PI).prop_map(|(r, t)| p(r * t.cos(), r * t.sin()))
    }

    proptest! {
        #[test]
        fn exp_of_minus_busemann_is_poisson(t in 0.0..TAU, x in point()) {
            let th = BoundaryPoint::new(t);
            let lhs = (-busemann(th, x)).exp();
            let rhs = poisson_kernel(x, th);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn gradient_is_unit(t in 0.0..TAU, x in point()) {
            let g = busemann_gradient(BoundaryPoint::new(t), x);
            prop_assert!((g.hyperbolic_norm() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn hessian_trace_one_det_zero(t in 0.0..TAU, x in point(), rot in -PI..PI) {
            let h = busemann_hessian(BoundaryPoint::new(t), &Frame::rotated(x, rot));
            prop_assert!((h.get(0, 1) - h.get(1, 0)).abs() < 1e-15);
            prop_assert!((h.trace() - 1.0).abs() < 1e-10);
            prop_assert!(h.det().abs() < 1e-10);
            let [lo, _] = h.symmetric_eigenvalues();
            prop_assert!(lo > -1e-10);
        }

        #[test]
        fn theta_round_trip(t in 1e-6..(FRAC_PI_2 - 1e-6)) {
            let back = theta_of_s(s_of_theta(t).unwrap()).unwrap();
            prop_assert!((back - t).abs() < 1e-12);
        }

        #[test]
        fn theta_increasing(a in 1e-3..30.0f64, d in 1e-3..1.0f64) {
            prop_assert!(theta_of_s(a + d).unwrap() > theta_of_s(a).unwrap());
        }

        #[test]
        fn busemann_cocycle(t in 0.0..TAU, x in point(), y in point(), g in isometry()) {
            // B_θ(x, y) = B_θ(x) − B_θ(y) is invariant under moving everything by g
            let th = BoundaryPoint::new(t);
            let lhs = busemann(th, x) - busemann(th, y);
            let gt = g.apply_boundary(th);
            let rhs = busemann(gt, g.apply(x)) - busemann(gt, g.apply(y));
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
        }

        #[test]
        fn isometries_preserve_distance(x in point(), y in point(), g in isometry()) {
            let d0 = disk_distance(x, y);
            let d1 = disk_distance(g.apply(x), g.apply(y));
            prop_assert!((d0 - d1).abs() < 1e-9 * (1.0 + d0));
        }

        #[test]
        fn group_law(x in point(), g in isometry(), h in isometry()) {
            let lhs = g.compose(&h).apply(x);
            let rhs = g.apply(h.apply(x));
            prop_assert!(lhs.euclidean_distance(&rhs) < 1e-12);
            prop_assert!(g.compose(&g.inverse()).apply(x).euclidean_distance(&x) < 1e-13);
        }

        #[test]
        fn differential_preserves_norm(x in point(), g in isometry(), a in -1.0..1.0f64, b in -1.0..1.0f64) {
            let v = TangentVector::new(x, a, b);
            let w = g.differential(&v);
            let (n0, n1) = (v.hyperbolic_norm(), w.hyperbolic_norm());
            prop_assert!((n0 - n1).abs() <= 1e-12 * n0.max(1.0));
        }

        #[test]
        fn differential_matches_distance_difference(x in point(), g in isometry(), ang in -PI..PI) {
            // ‖dg(v)‖ against d(g x, g(x + h v))/h for a hyperbolic-unit v
            let h = 1e-7;
            let v = TangentVector::from_frame(x, [ang.cos(), ang.sin()]);
            let moved = p(x.u() + h * v.a, x.v() + h * v.b);
            let fd = disk_distance(g.apply(x), g.apply(moved)) / h;
            prop_assert!((g.differential(&v).hyperbolic_norm() - fd).abs() < 1e-6);
        }

        #[test]
        fn exp_log_inverse(x in point(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
            let y = exp_frame(x, [a, b]);
            let back = log_frame(x, y);
            prop_assert!((back[0] - a).abs() < 1e-8 && (back[1] - b).abs() < 1e-8);
            prop_assert!((disk_distance(x, y) - a.hypot(b)).abs() < 1e-8);
        }
    }
}
