//! Conformal barycenters and the pointwise Douady–Earle extension.
//!
//! The barycenter of a finite measure `ν` on the circle is the unique minimizer
//! of `B_ν(x) = ∫ B_θ(x, O) dν(θ)`. In the canonical frame at `x` the gradient
//! is `Σ mᵢ wᵢ` and the Hessian `total·I − Σ mᵢ wᵢwᵢᵀ`, where `wᵢ` is the unit
//! gradient of `B_{θᵢ}`. The Hessian is positive definite unless the mass sits
//! at a single pair of antipodal directions, so Newton's method in exponential
//! coordinates converges quadratically once close.

#[allow(unused_imports)]
use num_traits::Float;

use crate::circle_map::CircleMap;
use crate::disk::{busemann, busemann_gradient_frame, exp_frame, BoundaryPoint, DiskPoint, TangentVector};
use crate::linalg::Mat2;
use crate::measure::{visual_measure, WeightedNodes};
use crate::quadrature::QuadratureRule;
use crate::sum::{pairwise, pairwise_scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Gradient-norm threshold, in hyperbolic units per unit mass.
    pub tol: f64,
    pub max_iter: usize,
    /// Armijo sufficient-decrease constant of the backtracking search.
    pub damping: f64,
    /// Longest Newton step taken at once, in hyperbolic distance.
    pub max_step: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { tol: 1e-11, max_iter: 100, damping: 1e-4, max_step: 4.0 }
    }
}

impl SolverConfig {
    pub fn with_tol(tol: f64) -> Self {
        SolverConfig { tol, ..Self::default() }
    }

    pub fn check(&self) -> Result<()> {
        if !(self.tol > 0.0)
            || self.max_iter == 0
            || !(self.damping > 0.0 && self.damping < 0.5)
            || !(self.max_step > 0.0)
        {
            return Err(Error::Domain { what: "solver tolerance", value: self.tol, domain: "(0, ∞)" });
        }
        Ok(())
    }
}

/// A measure (already pushed forward) whose barycenter is wanted.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycenterProblem {
    measure: WeightedNodes,
    config: SolverConfig,
}

impl BarycenterProblem {
    /// Refuses measures in which one node carries half the mass or more.
    pub fn new(measure: WeightedNodes, config: SolverConfig) -> Result<Self> {
        config.check()?;
        let fraction = measure.max_mass() / measure.total();
        if fraction >= 0.5 {
            return Err(Error::AtomicMeasure { fraction });
        }
        Ok(BarycenterProblem { measure, config })
    }

    #[inline]
    pub fn measure(&self) -> &WeightedNodes {
        &self.measure
    }

    #[inline]
    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Euclidean mean of the node directions, halved if it lies near the
    /// circle; the origin if the mean is degenerate.
    pub fn default_init(&self) -> DiskPoint {
        let [a, b] = self.measure.euclidean_mean();
        let r = a.hypot(b);
        let s = if r > 0.9 { 0.5 } else { 1.0 };
        DiskPoint::new(s * a, s * b).unwrap_or(DiskPoint::ORIGIN)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    pub point: DiskPoint,
    /// Hyperbolic norm of `Σ mᵢ ∇B_{θᵢ}` at `point`.
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// `Σ mᵢ B_{θᵢ}(x, O)`.
pub fn averaged_busemann(nu: &WeightedNodes, x: DiskPoint) -> f64 {
    let (nodes, masses) = (nu.nodes(), nu.masses());
    pairwise_scalar(nu.len(), |i| masses[i] * busemann(BoundaryPoint::new(nodes[i]), x))
}

/// Gradient and Hessian in the canonical frame at `x`.
fn frame_derivatives(nu: &WeightedNodes, x: DiskPoint) -> ([f64; 2], Mat2) {
    let (nodes, masses) = (nu.nodes(), nu.masses());
    let [g0, g1, h00, h01, h11] = pairwise::<5, _>(nu.len(), |i| {
        let w = busemann_gradient_frame(BoundaryPoint::new(nodes[i]), x);
        let m = masses[i];
        [m * w[0], m * w[1], m * w[0] * w[0], m * w[0] * w[1], m * w[1] * w[1]]
    });
    let t = nu.total();
    ([g0, g1], Mat2::new(t - h00, -h01, -h01, t - h11))
}

/// `Σ mᵢ ∇B_{θᵢ}(x)`.
pub fn barycenter_gradient(nu: &WeightedNodes, x: DiskPoint) -> TangentVector {
    TangentVector::from_frame(x, frame_derivatives(nu, x).0)
}

/// Hessian of [`averaged_busemann`] in the canonical frame at `x`, checked for
/// positive definiteness.
pub fn barycenter_hessian(nu: &WeightedNodes, x: DiskPoint) -> Result<Mat2> {
    let h = frame_derivatives(nu, x).1;
    check_hessian(&h, nu.total())?;
    Ok(h)
}

fn check_hessian(h: &Mat2, total: f64) -> Result<()> {
    let [lo, _] = h.symmetric_eigenvalues();
    if !(lo >= 1e-12 * total) {
        return Err(Error::SingularHessian { min_eigenvalue: lo });
    }
    Ok(())
}

/// Damped Newton iteration in exponential coordinates at the current iterate,
/// with Armijo backtracking on the averaged Busemann function.
pub fn solve_barycenter(problem: &BarycenterProblem, init: DiskPoint) -> Result<SolveReport> {
    let nu = &problem.measure;
    let cfg = &problem.config;
    let total = nu.total();
    let mut x = init;
    let mut f = averaged_busemann(nu, x);
    for iter in 0..=cfg.max_iter {
        let (g, h) = frame_derivatives(nu, x);
        let gnorm = g[0].hypot(g[1]);
        if gnorm <= cfg.tol {
            return Ok(SolveReport { point: x, gradient_norm: gnorm, iterations: iter, converged: true });
        }
        if iter == cfg.max_iter {
            return Err(Error::MaxIterations { iterations: iter, gradient_norm: gnorm });
        }
        check_hessian(&h, total)?;
        let hinv = h.inverse().ok_or(Error::SingularHessian { min_eigenvalue: 0.0 })?;
        let mut step = hinv.apply(g);
        step = [-step[0], -step[1]];
        let len = step[0].hypot(step[1]);
        if len > cfg.max_step {
            step = [step[0] * cfg.max_step / len, step[1] * cfg.max_step / len];
        }
        let slope = g[0] * step[0] + g[1] * step[1];
        // near the minimum the decrease drops below the rounding level of f
        let slack = 64.0 * f64::EPSILON * (f.abs() + total);
        let mut t = 1.0;
        loop {
            let cand = exp_frame(x, [t * step[0], t * step[1]]);
            let fc = averaged_busemann(nu, cand);
            if fc <= f + cfg.damping * t * slope + slack {
                x = cand;
                f = fc;
                break;
            }
            t *= 0.5;
            if t < 1e-12 {
                return Err(Error::LineSearch { gradient_norm: gnorm });
            }
        }
    }
    unreachable!("loop returns on its last iteration")
}

/// Pointwise Douady–Earle extension: the barycenter of `φ⋆μ_x`.
pub fn de_extend(map: &CircleMap, x: DiskPoint, rule: &QuadratureRule, config: &SolverConfig) -> Result<SolveReport> {
    Ok(extend_with_measures(map, x, rule, config)?.report)
}

/// The extension together with the measures it was computed from.
pub(crate) struct Extension {
    pub source: WeightedNodes,
    pub pushed: WeightedNodes,
    pub report: SolveReport,
}

/// Largest tolerated `|ν(∂H²) − 1|` for a discretized visual measure. The
/// Hessian trace equals this mass, so the bound matches the trace tolerance.
pub const MASS_TOLERANCE: f64 = 1e-8;

pub(crate) fn extend_with_measures(
    map: &CircleMap,
    x: DiskPoint,
    rule: &QuadratureRule,
    config: &SolverConfig,
) -> Result<Extension> {
    let source = visual_measure(x, rule)?;
    if !((source.total() - 1.0).abs() <= MASS_TOLERANCE) {
        return Err(Error::Unresolved { mass: source.total() });
    }
    let pushed = source.pushforward(map);
    let problem = BarycenterProblem::new(pushed, *config)?;
    let report = solve_barycenter(&problem, problem.default_init())?;
    Ok(Extension { source, pushed: problem.measure, report })
}
