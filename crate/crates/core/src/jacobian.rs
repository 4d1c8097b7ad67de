//! Differential and Jacobian of the extension.
//!
//! Differentiating the barycenter condition `Σ mᵢ(x) ∇B_{φ(θᵢ)}(F(x)) = 0`
//! with `dmᵢ = −mᵢ dB_{θᵢ,x}` gives, in orthonormal frames at `x` and
//! `y = F(x)`, the linear system `H·D = G` with
//!
//! * `H_{jk} = Σ mᵢ ∇dB_{φθᵢ,y}(ē_j, ē_k)`, the Hessian of the target problem,
//! * `G_{jl} = Σ mᵢ dB_{θᵢ,x}(e_l) dB_{φθᵢ,y}(ē_j)`.
//!
//! Both frames are canonical (see [`crate::disk`]), so `D` is directly
//! comparable between points and with finite differences.

use crate::barycenter::{de_extend, extend_with_measures, SolveReport, SolverConfig};
use crate::circle_map::CircleMap;
use crate::disk::{busemann_gradient_frame, exp_frame, log_frame, BoundaryPoint, DiskPoint};
use crate::linalg::Mat2;
use crate::measure::pinch_integrals;
use crate::quadrature::QuadratureRule;
use crate::sum::pairwise;
use crate::{Error, Result};

/// `H` beyond this condition number is rejected.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferentialReport {
    pub source: DiskPoint,
    /// Solve of `y = F(x)`.
    pub solve: SolveReport,
    /// `dF_x` in the canonical frames at `x` and `y`.
    pub d: Mat2,
    /// Signed `det D`; negative only for orientation-reversing behaviour.
    pub jac: f64,
    pub h: Mat2,
    pub g: Mat2,
    pub cond_h: f64,
    /// Singular values of `D`, ascending.
    pub stretch: [f64; 2],
    /// Total mass of the discretized visual measure.
    pub mass: f64,
}

impl DifferentialReport {
    #[inline]
    pub fn point(&self) -> DiskPoint {
        self.solve.point
    }

    #[inline]
    pub fn abs_jac(&self) -> f64 {
        self.jac.abs()
    }

    /// `‖Σ mᵢ ∇B_{φθᵢ}(y)‖` at the solved point.
    #[inline]
    pub fn residual(&self) -> f64 {
        self.solve.gradient_norm
    }
}

pub fn differential(
    map: &CircleMap,
    x: DiskPoint,
    rule: &QuadratureRule,
    config: &SolverConfig,
) -> Result<DifferentialReport> {
    let ext = extend_with_measures(map, x, rule, config)?;
    let y = ext.report.point;
    let (src, dst) = (&ext.source, &ext.pushed);
    let (src_nodes, dst_nodes, masses) = (src.nodes(), dst.nodes(), src.masses());
    let s = pairwise::<7, _>(src.len(), |i| {
        let ws = busemann_gradient_frame(BoundaryPoint::new(src_nodes[i]), x);
        let wt = busemann_gradient_frame(BoundaryPoint::new(dst_nodes[i]), y);
        let m = masses[i];
        [
            m * wt[0] * wt[0],
            m * wt[0] * wt[1],
            m * wt[1] * wt[1],
            m * wt[0] * ws[0],
            m * wt[0] * ws[1],
            m * wt[1] * ws[0],
            m * wt[1] * ws[1],
        ]
    });
    let total = src.total();
    let h = Mat2::new(total - s[0], -s[1], -s[1], total - s[2]);
    let g = Mat2::new(s[3], s[4], s[5], s[6]);
    let cond_h = h.condition_number();
    if !(cond_h <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition: cond_h });
    }
    let hinv = h.inverse().ok_or(Error::IllConditioned { condition: cond_h })?;
    let d = hinv * g;
    Ok(DifferentialReport {
        source: x,
        solve: ext.report,
        d,
        jac: d.det(),
        h,
        g,
        cond_h,
        stretch: d.singular_values(),
        mass: total,
    })
}

/// Resolution of the first-quadrant pinching integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchQuadrature {
    pub s_max: f64,
    pub nodes: usize,
}

impl Default for PinchQuadrature {
    fn default() -> Self {
        PinchQuadrature { s_max: 40.0, nodes: 640 }
    }
}

/// Eigenvalues of `dF_ε` at the origin, where the symmetry makes `D` diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchEigenvalues {
    pub epsilon: f64,
    /// Stretch along the `x`-axis.
    pub lambda1: f64,
    /// Stretch along the `y`-axis.
    pub lambda2: f64,
    pub jac_origin: f64,
    pub accuracy_warning: bool,
}

/// `λ₁ = ∫cos θ cos φ_ε / ∫sin² φ_ε`, `λ₂ = ∫sin θ sin φ_ε / ∫cos² φ_ε`, all over
/// the first quadrant.
pub fn lambda_formulas(epsilon: f64, quad: PinchQuadrature) -> Result<PinchEigenvalues> {
    let p = pinch_integrals(epsilon, quad.s_max, quad.nodes)?;
    let lambda1 = p.n1 / p.d1;
    let lambda2 = p.n2 / p.d2;
    Ok(PinchEigenvalues {
        epsilon,
        lambda1,
        lambda2,
        jac_origin: lambda1 * lambda2,
        accuracy_warning: p.accuracy_warning(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdJacobian {
    pub matrix: Mat2,
    pub point: DiskPoint,
    /// Set when solver noise `tol/step` exceeds `1e−6`.
    pub noise_warning: bool,
}

/// Central differences of the extension along geodesics in the canonical
/// frame at `x`, read off through the logarithm at `F(x)`. `step` is in
/// hyperbolic units.
pub fn fd_jacobian(
    map: &CircleMap,
    x: DiskPoint,
    step: f64,
    rule: &QuadratureRule,
    config: &SolverConfig,
) -> Result<FdJacobian> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(Error::InvalidStep(step));
    }
    let y = de_extend(map, x, rule, config)?.point;
    let mut cols = [[0.0; 2]; 2];
    for (l, col) in cols.iter_mut().enumerate() {
        let mut e = [0.0; 2];
        e[l] = step;
        let plus = de_extend(map, exp_frame(x, e), rule, config)?.point;
        let minus = de_extend(map, exp_frame(x, [-e[0], -e[1]]), rule, config)?.point;
        let (lp, lm) = (log_frame(y, plus), log_frame(y, minus));
        *col = [(lp[0] - lm[0]) / (2.0 * step), (lp[1] - lm[1]) / (2.0 * step)];
    }
    Ok(FdJacobian { matrix: Mat2::from_columns(cols[0], cols[1]), point: y, noise_warning: config.tol / step > 1e-6 })
}

/// Largest deviation of `|Jac|` from 1 over a set of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidityGap {
    pub max_deviation: f64,
    pub argmax: DiskPoint,
    pub index: usize,
    pub max_abs_jac: f64,
}

impl RigidityGap {
    /// Reduces already computed Jacobians; ties go to the lowest index.
    pub fn from_jacobians(points: &[DiskPoint], jacs: &[f64]) -> Result<Self> {
        if points.is_empty() || points.len() != jacs.len() {
            return Err(Error::EmptyGrid);
        }
        let mut best = RigidityGap { max_deviation: -1.0, argmax: points[0], index: 0, max_abs_jac: 0.0 };
        for (i, (p, j)) in points.iter().zip(jacs).enumerate() {
            let dev = (j.abs() - 1.0).abs();
            if dev > best.max_deviation {
                best.max_deviation = dev;
                best.argmax = *p;
                best.index = i;
            }
            best.max_abs_jac = best.max_abs_jac.max(j.abs());
        }
        Ok(best)
    }
}

/// Scans [`differential`] over `grid`.
pub fn rigidity_gap(
    map: &CircleMap,
    grid: &[DiskPoint],
    rule: &QuadratureRule,
    config: &SolverConfig,
) -> Result<RigidityGap> {
    let jacs = grid
        .iter()
        .map(|&x| differential(map, x, rule, config).map(|r| r.jac))
        .collect::<Result<alloc::vec::Vec<f64>>>()?;
    RigidityGap::from_jacobians(grid, &jacs)
}
