//! Command-line interface.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dext_core::{de_extend, differential, fd_jacobian, DiskPoint, Mat2, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{PolarGrid, RuleChoice, RunConfig, DEFAULT_EPS_LIST, DEFAULT_QUAD_NODES, DEFAULT_S_MAX};
use crate::map_spec::MapSpec;
use crate::scan::{grid_rows, grid_table, rigidity};
use crate::sweep::{pinch_sweep, plot_script, sweep_table};
use crate::table::{emit, real, Table};

#[derive(Debug, Parser)]
#[command(name = "dext", version, about = "Douady-Earle extension experiments on the Poincare disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extend a circle map to one interior point.
    Extend {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        point: PointArg,
        #[command(flatten)]
        common: Common,
    },
    /// Differential and Jacobian at a point, with a finite-difference check.
    Jacobian {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        point: PointArg,
        /// Finite-difference step in hyperbolic units.
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
        /// Without --point: number of random points (hyperbolic radius ≤ 2) drawn with --seed.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form pinching eigenvalues at O over a list of epsilons.
    PinchSweep {
        /// Comma-separated epsilons in (0, 1].
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_EPS_LIST)]
        eps_list: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Largest deviation of |Jac| from 1 over a polar grid.
    Rigidity {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        common: Common,
    },
    /// Jacobian over a polar grid, as CSV.
    Grid {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct MapArg {
    /// identity | mobius <alpha> <c_re> <c_im> | pinch <eps> | spline <path>
    #[arg(long, num_args = 1..=4, allow_negative_numbers = true, value_name = "SPEC", required = true)]
    pub map: Vec<String>,
}

#[derive(Debug, Args)]
pub struct PointArg {
    /// Interior point, Euclidean disk coordinates.
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["U", "V"])]
    pub point: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct GridArg {
    /// Comma-separated hyperbolic distances from O; 0 gives the single point O.
    #[arg(long, value_delimiter = ',')]
    pub grid_radii: Option<Vec<f64>>,
    /// Angles per nonzero radius.
    #[arg(long, default_value_t = 12)]
    pub grid_angles: usize,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Quadrature nodes on the circle.
    #[arg(long, default_value_t = DEFAULT_QUAD_NODES)]
    pub quad_nodes: usize,
    /// Truncation of the s-substitution.
    #[arg(long, default_value_t = DEFAULT_S_MAX)]
    pub smax: f64,
    /// Gradient-norm tolerance of the barycenter solver.
    #[arg(long, default_value_t = SolverConfig::default().tol)]
    pub tol: f64,
    /// Circle quadrature rule.
    #[arg(long, value_enum, default_value_t = RuleChoice::Auto)]
    pub rule: RuleChoice,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Common {
    fn config(&self, grid: Option<&GridArg>) -> Result<RunConfig> {
        let grid = match grid {
            Some(GridArg { grid_radii: Some(r), grid_angles }) => PolarGrid::new(r.clone(), *grid_angles)?,
            Some(GridArg { grid_radii: None, grid_angles }) => {
                PolarGrid::new(PolarGrid::default().radii, *grid_angles)?
            }
            None => PolarGrid::default(),
        };
        let cfg = RunConfig {
            quad_nodes: self.quad_nodes,
            s_max: self.smax,
            rule: self.rule,
            solver: SolverConfig::with_tol(self.tol),
            grid,
            out: self.out.clone(),
            seed: self.seed,
        };
        cfg.check()?;
        Ok(cfg)
    }
}

fn point(arg: &PointArg) -> Result<Option<DiskPoint>> {
    match &arg.point {
        None => Ok(None),
        Some(v) => Ok(Some(DiskPoint::new(v[0], v[1]).context("--point")?)),
    }
}

fn mat(name: &str, m: &Mat2) -> String {
    format!(
        "{name} = [[{}, {}], [{}, {}]]\n",
        real(m.get(0, 0)),
        real(m.get(0, 1)),
        real(m.get(1, 0)),
        real(m.get(1, 1))
    )
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extend { map, point: p, common } => {
            let cfg = common.config(None)?;
            let spec = MapSpec::parse(&map.map)?;
            let x = point(&p)?.unwrap_or(DiskPoint::ORIGIN);
            let report = de_extend(&spec.build()?, x, &cfg.rule_for(&spec)?, &cfg.solver)
                .with_context(|| format!("extension of {spec} at ({}, {}) failed", x.u(), x.v()))?;
            if !report.converged {
                bail!("solver did not converge (gradient norm {:e})", report.gradient_norm);
            }
            let text = format!(
                "map = {spec}\nx_u = {}\nx_v = {}\ny_u = {}\ny_v = {}\ngradient_norm = {}\niterations = {}\nconverged = {}\n",
                real(x.u()),
                real(x.v()),
                real(report.point.u()),
                real(report.point.v()),
                real(report.gradient_norm),
                report.iterations,
                report.converged
            );
            emit(&text, cfg.out.as_deref())?;
        }
        Command::Jacobian { map, point: p, fd_step, samples, common } => {
            let cfg = common.config(None)?;
            let spec = MapSpec::parse(&map.map)?;
            let circle_map = spec.build()?;
            let rule = cfg.rule_for(&spec)?;
            if let Some(x) = point(&p)? {
                let r = differential(&circle_map, x, &rule, &cfg.solver)?;
                let fd = fd_jacobian(&circle_map, x, fd_step, &rule, &cfg.solver)?;
                let mut text = format!(
                    "map = {spec}\nx_u = {}\nx_v = {}\ny_u = {}\ny_v = {}\njac = {}\nabs_jac = {}\n",
                    real(x.u()),
                    real(x.v()),
                    real(r.point().u()),
                    real(r.point().v()),
                    real(r.jac),
                    real(r.abs_jac())
                );
                text += &mat("D", &r.d);
                text += &mat("H", &r.h);
                text += &mat("G", &r.g);
                text += &mat("D_fd", &fd.matrix);
                text += &format!(
                    "fd_max_gap = {}\ncond_h = {}\nstretch = [{}, {}]\ntrace_h = {}\ntrace_g = {}\nresidual = {}\n",
                    real(fd.matrix.max_abs_diff(&r.d)),
                    real(r.cond_h),
                    real(r.stretch[0]),
                    real(r.stretch[1]),
                    real(r.h.trace()),
                    real(r.g.trace()),
                    real(r.residual())
                );
                if fd.noise_warning {
                    text += "warning = solver tolerance is large relative to the finite-difference step\n";
                }
                emit(&text, cfg.out.as_deref())?;
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let xs: Vec<DiskPoint> = (0..samples)
                    .map(|_| DiskPoint::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
                    .collect::<std::result::Result<_, _>>()?;
                let rows: Vec<(DiskPoint, f64, f64, f64)> = xs
                    .par_iter()
                    .map(|&x| -> Result<_> {
                        let r = differential(&circle_map, x, &rule, &cfg.solver)?;
                        let fd = fd_jacobian(&circle_map, x, fd_step, &rule, &cfg.solver)?;
                        Ok((x, r.jac, fd.matrix.max_abs_diff(&r.d), r.residual()))
                    })
                    .collect::<Result<_>>()?;
                let mut t = Table::new(["index", "x_u", "x_v", "jac", "fd_max_gap", "residual"]);
                for (i, (x, jac, gap, res)) in rows.iter().enumerate() {
                    t.push(vec![i.to_string(), real(x.u()), real(x.v()), real(*jac), real(*gap), real(*res)]);
                }
                t.write(cfg.out.as_deref())?;
            }
        }
        Command::PinchSweep { eps_list, common } => {
            let cfg = common.config(None)?;
            let rows = pinch_sweep(&eps_list, &cfg)?;
            sweep_table(&rows).write(cfg.out.as_deref())?;
            if let Some(out) = &cfg.out {
                let script = out.with_extension("plot.py");
                std::fs::write(&script, plot_script(out))?;
                eprintln!("wrote {} and {}", out.display(), script.display());
            }
        }
        Command::Rigidity { map, grid, common } => {
            let cfg = common.config(Some(&grid))?;
            let spec = MapSpec::parse(&map.map)?;
            let report = rigidity(&spec, &cfg)?;
            emit(&report.render(&spec), cfg.out.as_deref())?;
        }
        Command::Grid { map, grid, common } => {
            let cfg = common.config(Some(&grid))?;
            let spec = MapSpec::parse(&map.map)?;
            let rows = grid_rows(&spec, &cfg)?;
            grid_table(&rows).write(cfg.out.as_deref())?;
        }
    }
    Ok(())
}
