//! Run configuration shared by the subcommands.

use std::path::PathBuf;

use anyhow::{bail, Result};
use dext_core::{DiskPoint, PinchQuadrature, QuadratureRule, SolverConfig};

use crate::map_spec::MapSpec;

pub const DEFAULT_QUAD_NODES: usize = 1024;
pub const DEFAULT_S_MAX: f64 = 40.0;
pub const DEFAULT_EPS_LIST: [f64; 6] = [0.5, 0.2, 0.1, 0.05, 0.02, 0.01];

/// Circle rule used for the visual measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RuleChoice {
    /// Theta-substitution for pinching maps, panel-Gauss otherwise.
    #[default]
    Auto,
    PanelGauss,
    ThetaSubstitution,
    Trapezoid,
}

/// Polar grid: every hyperbolic radius times `angles` equally spaced angles.
/// Radius 0 contributes the single point `O`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, angles: usize) -> Result<Self> {
        if radii.is_empty() {
            bail!("grid needs at least one radius");
        }
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            bail!("grid radius {r} must be a finite hyperbolic distance ≥ 0");
        }
        if angles == 0 && radii.iter().any(|&r| r > 0.0) {
            bail!("grid needs at least one angle");
        }
        Ok(PolarGrid { radii, angles })
    }

    /// `(radius, angle, point)` in row order: radii as given, angles ascending.
    pub fn points(&self) -> Result<Vec<(f64, f64, DiskPoint)>> {
        let mut out = Vec::new();
        for &r in &self.radii {
            if r == 0.0 {
                out.push((0.0, 0.0, DiskPoint::ORIGIN));
                continue;
            }
            for k in 0..self.angles {
                let a = std::f64::consts::TAU * k as f64 / self.angles as f64;
                out.push((r, a, DiskPoint::from_polar(r, a)?));
            }
        }
        Ok(out)
    }
}

impl Default for PolarGrid {
    /// Ten radii out to hyperbolic distance 3, twelve angles.
    fn default() -> Self {
        PolarGrid { radii: (1..=10).map(|k| 0.3 * k as f64).collect(), angles: 12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quad_nodes: usize,
    pub s_max: f64,
    pub rule: RuleChoice,
    pub solver: SolverConfig,
    pub grid: PolarGrid,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad_nodes: DEFAULT_QUAD_NODES,
            s_max: DEFAULT_S_MAX,
            rule: RuleChoice::Auto,
            solver: SolverConfig::default(),
            grid: PolarGrid::default(),
            out: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if self.quad_nodes < 16 {
            bail!("--quad-nodes {} is too small (need ≥ 16)", self.quad_nodes);
        }
        if !(self.s_max > 0.0 && self.s_max.is_finite()) {
            bail!("--smax {} must be positive", self.s_max);
        }
        self.solver.check()?;
        Ok(())
    }

    pub fn rule_for(&self, map: &MapSpec) -> Result<QuadratureRule> {
        let choice = match self.rule {
            RuleChoice::Auto if map.is_pinch() => RuleChoice::ThetaSubstitution,
            RuleChoice::Auto => RuleChoice::PanelGauss,
            other => other,
        };
        Ok(match choice {
            RuleChoice::ThetaSubstitution => QuadratureRule::theta_substitution(self.s_max, self.quad_nodes)?,
            RuleChoice::Trapezoid => QuadratureRule::trapezoid(self.quad_nodes)?,
            _ => QuadratureRule::panel_gauss_nodes(self.quad_nodes)?,
        })
    }

    /// Resolution of the closed-form pinching integrals.
    pub fn pinch_quadrature(&self) -> PinchQuadrature {
        PinchQuadrature { s_max: self.s_max, nodes: self.quad_nodes.max(PinchQuadrature::default().nodes) }
    }

    /// Same configuration with twice the quadrature nodes.
    pub fn refined(&self) -> Self {
        RunConfig { quad_nodes: 2 * self.quad_nodes, ..self.clone() }
    }
}
