//! Finite measures on the circle as weighted nodes.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::circle_map::CircleMap;
use crate::disk::{poisson_kernel, BoundaryPoint, DiskPoint};
use crate::quadrature::{QuadratureRule, SubstitutionRule};
use crate::sum::{pairwise, pairwise_scalar};
use crate::{Error, Result};

/// Critical exponent of a lattice in `H²`. Radon–Nikodym derivatives between
/// visual measures are `e^{−δB}`, which with `δ = 1` is the Poisson kernel.
pub const CRITICAL_EXPONENT: f64 = 1.0;

/// `∫ f dν ≈ Σ f(θᵢ) mᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedNodes {
    nodes: Vec<f64>,
    masses: Vec<f64>,
    total: f64,
}

impl WeightedNodes {
    pub fn new(nodes: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if nodes.len() != masses.len() || nodes.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if masses.iter().any(|m| !(*m >= 0.0) || !m.is_finite()) || nodes.iter().any(|t| !t.is_finite()) {
            return Err(Error::EmptyMeasure);
        }
        let total = pairwise_scalar(masses.len(), |i| masses[i]);
        if !(total > 0.0) {
            return Err(Error::EmptyMeasure);
        }
        Ok(WeightedNodes { nodes, masses, total })
    }

    /// Density `density(θ)` against `dθ/2π`, discretized by `rule`.
    pub fn from_density<F: Fn(f64) -> f64>(rule: &QuadratureRule, density: F) -> Result<Self> {
        let masses = rule.nodes().iter().zip(rule.weights()).map(|(&t, &w)| density(t) * w / TAU).collect();
        Self::new(rule.nodes().to_vec(), masses)
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_mass(&self) -> f64 {
        self.masses.iter().copied().fold(0.0, f64::max)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        pairwise_scalar(self.len(), |i| f(self.nodes[i]) * self.masses[i])
    }

    /// `φ⋆ν`: same masses, nodes moved by the map.
    pub fn pushforward(&self, map: &CircleMap) -> WeightedNodes {
        WeightedNodes {
            nodes: self.nodes.iter().map(|&t| map.eval(t)).collect(),
            masses: self.masses.clone(),
            total: self.total,
        }
    }

    /// Node angles as boundary points, paired with masses.
    pub fn iter(&self) -> impl Iterator<Item = (BoundaryPoint, f64)> + '_ {
        self.nodes.iter().zip(&self.masses).map(|(&t, &m)| (BoundaryPoint::new(t), m))
    }

    /// Weighted mean of the node unit vectors.
    pub fn euclidean_mean(&self) -> [f64; 2] {
        let s = pairwise::<2, _>(self.len(), |i| {
            let (sn, c) = self.nodes[i].sin_cos();
            [self.masses[i] * c, self.masses[i] * sn]
        });
        [s[0] / self.total, s[1] / self.total]
    }
}

/// Visual measure `μ_x`, a probability measure with density the Poisson kernel
/// at `x`; masses are `P(x, θᵢ) wᵢ / 2π`.
pub fn visual_measure(x: DiskPoint, rule: &QuadratureRule) -> Result<WeightedNodes> {
    WeightedNodes::from_density(rule, |t| poisson_kernel(x, BoundaryPoint::new(t)))
}

/// `∫ f d(φ⋆μ) = ∫ f∘φ dμ`, evaluated on the nodes of `mu`.
pub fn pushforward_integrate<F: Fn(f64) -> f64>(f: F, map: &CircleMap, mu: &WeightedNodes) -> f64 {
    mu.integrate(|t| f(map.eval(t)))
}

/// The four first-quadrant integrals behind the pinching eigenvalues at `O`,
/// after `θ = Θ(s)`. Then `cos θ = sech s`, `sin θ = tanh s` and the pinching
/// map becomes `s ↦ εs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchIntegrals {
    /// `∫ cos θ cos φ_ε(θ) dθ = ∫ sech²(s) sech(εs) ds`
    pub n1: f64,
    /// `∫ sin² φ_ε(θ) dθ = ∫ tanh²(εs) sech(s) ds`
    pub d1: f64,
    /// `∫ sin θ sin φ_ε(θ) dθ = ∫ tanh(s) tanh(εs) sech(s) ds`
    pub n2: f64,
    /// `∫ cos² φ_ε(θ) dθ = ∫ sech²(εs) sech(s) ds`
    pub d2: f64,
    /// `π/2 − Θ(S_max)`, a bound on the dropped tail of each integrand.
    pub truncation: f64,
}

impl PinchIntegrals {
    /// Set when `sech(S_max) > 1e−12`.
    pub fn accuracy_warning(&self) -> bool {
        self.truncation > 1e-12
    }
}

pub fn pinch_integrals(epsilon: f64, s_max: f64, nodes: usize) -> Result<PinchIntegrals> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain { what: "epsilon", value: epsilon, domain: "(0, 1]" });
    }
    let rule = SubstitutionRule::new(s_max, nodes)?;
    let [n1, d1, n2, d2] = pairwise::<4, _>(rule.len(), |i| {
        let (s, w) = rule.node(i);
        let (sech, tanh) = (1.0 / s.cosh(), s.tanh());
        let (sech_e, tanh_e) = (1.0 / (epsilon * s).cosh(), (epsilon * s).tanh());
        let ws = w * sech;
        [ws * sech * sech_e, ws * tanh_e * tanh_e, ws * tanh * tanh_e, ws * sech_e * sech_e]
    });
    Ok(PinchIntegrals { n1, d1, n2, d2, truncation: 1.0 / s_max.cosh() })
}
