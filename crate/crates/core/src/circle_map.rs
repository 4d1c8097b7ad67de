//! Orientation-preserving degree-one homeomorphisms of the circle.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::disk::{gudermannian, inverse_gudermannian, normalize_angle, BoundaryPoint, MobiusIsometry};
use crate::{Error, Result};

/// Angles this close to a quadrant boundary are treated as lying on it.
/// The pinching map is only Hölder-`ε` there, so the cutoff also keeps
/// rounding in the argument from moving the image by a macroscopic amount.
const AXIS_SNAP: f64 = 1e-14;

/// A boundary map `φ: ∂H² → ∂H²`.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleMap {
    Identity,
    Mobius(MobiusIsometry),
    Pinch(Pinch),
    Sampled(SampledMonotone),
    /// Applied right to left: `[f, g]` is `f ∘ g`.
    Composition(Vec<CircleMap>),
}

impl CircleMap {
    /// The symmetric pinching map `φ_ε`.
    pub fn pinch(epsilon: f64) -> Result<Self> {
        Pinch::new(epsilon).map(CircleMap::Pinch)
    }

    /// Boundary action of an orientation-preserving isometry.
    pub fn mobius(g: MobiusIsometry) -> Result<Self> {
        if !g.is_orientation_preserving() {
            return Err(Error::NotMonotone("orientation-reversing isometries do not induce degree-one maps".into()));
        }
        Ok(CircleMap::Mobius(g))
    }

    /// `compose([f, g, h]) = f ∘ g ∘ h`.
    pub fn compose(maps: Vec<CircleMap>) -> Self {
        CircleMap::Composition(maps)
    }

    /// Image of the angle `theta`, in `[0, 2π)`.
    pub fn eval(&self, theta: f64) -> f64 {
        match self {
            CircleMap::Identity => normalize_angle(theta),
            CircleMap::Mobius(g) => g.apply_boundary(BoundaryPoint::new(theta)).theta(),
            CircleMap::Pinch(p) => p.eval(theta),
            CircleMap::Sampled(s) => s.eval(theta),
            CircleMap::Composition(maps) => maps.iter().rev().fold(normalize_angle(theta), |t, m| m.eval(t)),
        }
    }

    pub fn eval_point(&self, p: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint::new(self.eval(p.theta()))
    }

    /// Samples `nodes` equally spaced angles and checks that consecutive
    /// images advance by a positive amount and wind exactly once.
    pub fn validate(&self, nodes: usize) -> Result<ValidationReport> {
        if nodes < 3 {
            return Err(Error::NotMonotone(format!("need at least 3 sample nodes, got {nodes}")));
        }
        let images: Vec<f64> = (0..nodes).map(|j| self.eval(TAU * j as f64 / nodes as f64)).collect();
        let mut min_increment = f64::INFINITY;
        let mut max_increment = 0.0f64;
        let mut total = 0.0;
        for j in 0..nodes {
            let next = images[(j + 1) % nodes];
            let step = normalize_angle(next - images[j]);
            if !(step > 0.0) {
                return Err(Error::NotMonotone(format!("image does not advance after node {j}")));
            }
            min_increment = min_increment.min(step);
            max_increment = max_increment.max(step);
            total += step;
        }
        let degree = (total / TAU).round() as i64;
        if degree != 1 {
            return Err(Error::NotMonotone(format!("sampled degree is {degree}")));
        }
        Ok(ValidationReport { nodes, min_increment, max_increment, degree })
    }
}

/// Outcome of [`CircleMap::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub nodes: usize,
    pub min_increment: f64,
    pub max_increment: f64,
    pub degree: i64,
}

impl ValidationReport {
    pub fn monotone(&self) -> bool {
        self.min_increment > 0.0 && self.degree == 1
    }
}

/// The pinching map `φ_ε`.
///
/// On the open first quadrant `φ_ε = Θ ∘ (ε·) ∘ Θ⁻¹`, so the anchor angles
/// `Θ(k)` go to `Θ(kε)`. The other quadrants follow from equivariance under
/// the reflections `θ ↦ −θ` and `θ ↦ π − θ`; the four axis directions are fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pinch {
    epsilon: f64,
}

impl Pinch {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon <= 1.0 {
            Ok(Pinch { epsilon })
        } else {
            Err(Error::Domain { what: "epsilon", value: epsilon, domain: "(0, 1]" })
        }
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `φ_ε` restricted to `[0, π/2]`.
    pub fn first_quadrant(&self, t: f64) -> f64 {
        if self.epsilon == 1.0 || t <= 0.0 {
            return t.max(0.0);
        }
        if t >= FRAC_PI_2 - AXIS_SNAP {
            return FRAC_PI_2;
        }
        gudermannian(self.epsilon * inverse_gudermannian(t))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let t = normalize_angle(theta);
        let q = |u: f64| self.first_quadrant(u);
        let out = if t <= FRAC_PI_2 {
            q(t)
        } else if t <= PI {
            PI - q(PI - t)
        } else if t <= 3.0 * FRAC_PI_2 {
            PI + q(t - PI)
        } else {
            TAU - q(TAU - t)
        };
        normalize_angle(out)
    }
}

/// Piecewise-linear circle map through sampled pairs `(θᵢ, φᵢ)`, interpolated
/// in lifted coordinates and closed up periodically.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMonotone {
    thetas: Vec<f64>,
    phis: Vec<f64>,
}

impl SampledMonotone {
    /// Both coordinates must be strictly increasing and span less than `2π`.
    pub fn new(pairs: &[(f64, f64)]) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::NotMonotone(format!("need at least 2 samples, got {}", pairs.len())));
        }
        for (i, w) in pairs.windows(2).enumerate() {
            let ((t0, p0), (t1, p1)) = (w[0], w[1]);
            if !(t1 > t0) || !(p1 > p0) {
                return Err(Error::NotMonotone(format!(
                    "samples {i} and {} are not strictly increasing: ({t0}, {p0}) -> ({t1}, {p1})",
                    i + 1
                )));
            }
        }
        let (first, last) = (pairs[0], pairs[pairs.len() - 1]);
        if !first.0.is_finite() || !first.1.is_finite() || !last.0.is_finite() || !last.1.is_finite() {
            return Err(Error::NotMonotone("non-finite sample".into()));
        }
        if !(last.0 - first.0 < TAU) || !(last.1 - first.1 < TAU) {
            return Err(Error::NotMonotone("samples wrap more than once around the circle".into()));
        }
        Ok(SampledMonotone { thetas: pairs.iter().map(|p| p.0).collect(), phis: pairs.iter().map(|p| p.1).collect() })
    }

    /// Samples a lift `f` (with `f(θ + 2π) = f(θ) + 2π`) at `n` equally spaced angles.
    pub fn sample<F: Fn(f64) -> f64>(n: usize, lift: F) -> Result<Self> {
        let pairs: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                (t, lift(t))
            })
            .collect();
        Self::new(&pairs)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.thetas.iter().copied().zip(self.phis.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let n = self.thetas.len();
        let t0 = self.thetas[0];
        let t = t0 + normalize_angle(theta - t0);
        // index of the last node ≤ t
        let i = self.thetas.partition_point(|&s| s <= t) - 1;
        let (ta, pa) = (self.thetas[i], self.phis[i]);
        let (tb, pb) = if i + 1 < n { (self.thetas[i + 1], self.phis[i + 1]) } else { (t0 + TAU, self.phis[0] + TAU) };
        let s = (t - ta) / (tb - ta);
        normalize_angle(pa + s * (pb - pa))
    }
}
