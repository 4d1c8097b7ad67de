//! Quadrature rules on the circle and on the half-line `s ∈ (0, S_max)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::disk::{gudermannian, inverse_gudermannian};
use crate::sum::pairwise_scalar;
use crate::{Error, Result};

/// Gauss–Legendre order used by panel rules unless stated otherwise.
pub const DEFAULT_ORDER: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Newton from the Tricomi initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes on `[a, b]` split into equal panels.
fn composite(a: f64, b: f64, order: usize, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (b - a) / panels as f64;
    let breaks: Vec<f64> = (0..=panels).map(|p| if p == panels { b } else { a + h * p as f64 }).collect();
    composite_on(&breaks, order)
}

/// Composite Gauss–Legendre nodes on consecutive panels `[b₀, b₁], [b₁, b₂], …`.
fn composite_on(breaks: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let panels = breaks.len().saturating_sub(1);
    let mut nodes = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for pair in breaks.windows(2) {
        let (lo, h) = (pair[0], pair[1] - pair[0]);
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(lo + 0.5 * h * (x + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    Trapezoid,
    PanelGauss {
        order: usize,
        panels: usize,
    },
    /// Per quadrant, `θ = Θ(s)` with Gauss panels in `s ∈ (0, s_max)`,
    /// reflected onto the other three quadrants.
    ThetaSubstitution {
        s_max: f64,
        order: usize,
        panels: usize,
    },
}

/// A rule `∫₀^{2π} f dθ ≈ Σ wᵢ f(θᵢ)` with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    scheme: Scheme,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Default for QuadratureRule {
    /// 64 Gauss–Legendre panels of order 16.
    fn default() -> Self {
        Self::panel_gauss(DEFAULT_ORDER, 64).expect("valid default rule")
    }
}

impl QuadratureRule {
    pub fn trapezoid(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidQuadrature(format!("trapezoid rule needs ≥ 3 nodes, got {n}")));
        }
        let h = TAU / n as f64;
        Ok(QuadratureRule {
            scheme: Scheme::Trapezoid,
            nodes: (0..n).map(|j| h * j as f64).collect(),
            weights: alloc::vec![h; n],
        })
    }

    pub fn panel_gauss(order: usize, panels: usize) -> Result<Self> {
        check_panels(order, panels)?;
        let (nodes, weights) = composite(0.0, TAU, order, panels);
        Ok(QuadratureRule { scheme: Scheme::PanelGauss { order, panels }, nodes, weights })
    }

    /// Panel-Gauss rule with about `nodes` nodes (rounded up to whole order-16 panels).
    pub fn panel_gauss_nodes(nodes: usize) -> Result<Self> {
        Self::panel_gauss(DEFAULT_ORDER, nodes.div_ceil(DEFAULT_ORDER).max(1))
    }

    /// Substitution rule with `nodes` total nodes (rounded up to a multiple of
    /// `4 × 16`). Nodes accumulate at the four axis directions, which resolves
    /// integrands that are smooth in `s` but only Hölder in `θ` there, such as
    /// anything composed with the pinching map. Per quadrant, panels are graded
    /// (see [`SubstitutionRule::graded`]) so that peaked densities away from the
    /// axes stay resolved too.
    pub fn theta_substitution(s_max: f64, nodes: usize) -> Result<Self> {
        let half = SubstitutionRule::graded(s_max, nodes.div_ceil(4))?;
        let (panels, order) = (half.panels, half.order);
        let mut out_nodes = Vec::with_capacity(4 * half.len());
        let mut out_weights = Vec::with_capacity(4 * half.len());
        let quadrant = half.first_quadrant();
        // images under θ, π − θ, π + θ, 2π − θ
        for (t, w) in quadrant.iter() {
            out_nodes.push(*t);
            out_weights.push(*w);
        }
        for (t, w) in quadrant.iter().rev() {
            out_nodes.push(PI - t);
            out_weights.push(*w);
        }
        for (t, w) in quadrant.iter() {
            out_nodes.push(PI + t);
            out_weights.push(*w);
        }
        for (t, w) in quadrant.iter().rev() {
            out_nodes.push(TAU - t);
            out_weights.push(*w);
        }
        Ok(QuadratureRule {
            scheme: Scheme::ThetaSubstitution { s_max, order, panels },
            nodes: out_nodes,
            weights: out_weights,
        })
    }

    #[inline]
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        pairwise_scalar(self.len(), |i| self.weights[i])
    }

    /// `∫₀^{2π} f(θ) dθ`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        pairwise_scalar(self.len(), |i| f(self.nodes[i]) * self.weights[i])
    }
}

fn check_panels(order: usize, panels: usize) -> Result<()> {
    if !(1..=64).contains(&order) || panels == 0 {
        return Err(Error::InvalidQuadrature(format!(
            "order {order} must lie in 1..=64 and panels {panels} must be positive"
        )));
    }
    Ok(())
}

/// Composite Gauss rule on `s ∈ (0, s_max)`, for first-quadrant integrals
/// after the substitution `θ = Θ(s)`, `dθ = sech(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstitutionRule {
    s_max: f64,
    order: usize,
    panels: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SubstitutionRule {
    /// About `nodes` nodes, rounded up to whole order-16 panels.
    pub fn new(s_max: f64, nodes: usize) -> Result<Self> {
        Self::with_order(s_max, DEFAULT_ORDER, nodes.div_ceil(DEFAULT_ORDER).max(1))
    }

    pub fn with_order(s_max: f64, order: usize, panels: usize) -> Result<Self> {
        if !(s_max > 0.0) || !s_max.is_finite() {
            return Err(Error::InvalidQuadrature(format!("S_max = {s_max} must be positive")));
        }
        check_panels(order, panels)?;
        let (nodes, weights) = composite(0.0, s_max, order, panels);
        Ok(SubstitutionRule { s_max, order, panels, nodes, weights })
    }

    /// About `nodes` nodes in order-16 panels: the first half of the panels
    /// are equally spaced in `θ = Θ(s)` and the rest equally spaced in `s` over
    /// the remaining tail up to `s_max`.
    pub fn graded(s_max: f64, nodes: usize) -> Result<Self> {
        if !(s_max > 0.0) || !s_max.is_finite() {
            return Err(Error::InvalidQuadrature(format!("S_max = {s_max} must be positive")));
        }
        let order = DEFAULT_ORDER;
        let panels = nodes.div_ceil(order).max(2);
        check_panels(order, panels)?;
        let head = panels / 2;
        let tail = panels - head;
        let dt = FRAC_PI_2 / (head + 1) as f64;
        let mut breaks: Vec<f64> = (0..=head).map(|k| inverse_gudermannian(dt * k as f64)).collect();
        let s_c = breaks[head];
        if s_c >= s_max {
            return Self::with_order(s_max, order, panels);
        }
        let h = (s_max - s_c) / tail as f64;
        breaks.extend((1..=tail).map(|k| if k == tail { s_max } else { s_c + h * k as f64 }));
        let (nodes, weights) = composite_on(&breaks, order);
        Ok(SubstitutionRule { s_max, order, panels, nodes, weights })
    }

    #[inline]
    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Mass of `(0, π/2)` lost to truncation, `π/2 − Θ(S_max)`.
    pub fn truncation(&self) -> f64 {
        FRAC_PI_2 - gudermannian(self.s_max).min(FRAC_PI_2)
    }

    #[inline]
    pub fn node(&self, i: usize) -> (f64, f64) {
        (self.nodes[i], self.weights[i])
    }

    /// `∫₀^{S_max} f(s) ds`.
    pub fn integrate_s<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        pairwise_scalar(self.len(), |i| f(self.nodes[i]) * self.weights[i])
    }

    /// `(θ, weight)` pairs for `∫₀^{π/2} g(θ) dθ ≈ Σ w g(θ)`, ascending in θ.
    pub fn first_quadrant(&self) -> Vec<(f64, f64)> {
        self.nodes.iter().zip(&self.weights).map(|(&s, &w)| (gudermannian(s), w / s.cosh())).collect()
    }
}
