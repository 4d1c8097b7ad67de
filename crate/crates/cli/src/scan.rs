//! Jacobian grids and rigidity scans over a polar grid.

use anyhow::Result;
use dext_core::{differential, DiskPoint, RigidityGap};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::map_spec::MapSpec;
use crate::table::{real, Table};

pub const GRID_COLUMNS: [&str; 11] =
    ["index", "radius", "angle", "x_u", "x_v", "y_u", "y_v", "jac", "log_abs_jac", "cond_h", "residual"];

/// Label of the grid maximum of `ln |Jac|`.
pub const J_LABEL: &str = "grid lower estimate of J";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub index: usize,
    pub radius: f64,
    pub angle: f64,
    pub x: DiskPoint,
    pub y: DiskPoint,
    pub jac: f64,
    pub cond_h: f64,
    pub residual: f64,
}

impl GridRow {
    pub fn log_abs_jac(&self) -> f64 {
        self.jac.abs().ln()
    }
}

/// Evaluates the differential at every grid point, in parallel, keeping grid order.
pub fn grid_rows(map: &MapSpec, cfg: &RunConfig) -> Result<Vec<GridRow>> {
    let circle_map = map.build()?;
    let rule = cfg.rule_for(map)?;
    let points = cfg.grid.points()?;
    points
        .par_iter()
        .enumerate()
        .map(|(index, &(radius, angle, x))| {
            let r = differential(&circle_map, x, &rule, &cfg.solver)?;
            Ok(GridRow { index, radius, angle, x, y: r.point(), jac: r.jac, cond_h: r.cond_h, residual: r.residual() })
        })
        .collect()
}

/// `max ln |Jac|` over the rows.
pub fn j_lower_estimate(rows: &[GridRow]) -> f64 {
    rows.iter().map(GridRow::log_abs_jac).fold(f64::NEG_INFINITY, f64::max)
}

pub fn grid_table(rows: &[GridRow]) -> Table {
    let mut t = Table::new(GRID_COLUMNS);
    for r in rows {
        t.push(vec![
            r.index.to_string(),
            real(r.radius),
            real(r.angle),
            real(r.x.u()),
            real(r.x.v()),
            real(r.y.u()),
            real(r.y.v()),
            real(r.jac),
            real(r.log_abs_jac()),
            real(r.cond_h),
            real(r.residual),
        ]);
    }
    t.footer(format!("{J_LABEL} (max log_abs_jac) = {}", real(j_lower_estimate(rows))));
    t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidityReport {
    pub gap: RigidityGap,
    pub points: usize,
    /// For Möbius maps, `max ‖F(x) − g(x)‖` (Euclidean, in the disk).
    pub pointwise_deviation: Option<f64>,
    pub max_residual: f64,
}

pub fn rigidity(map: &MapSpec, cfg: &RunConfig) -> Result<RigidityReport> {
    let rows = grid_rows(map, cfg)?;
    let points: Vec<DiskPoint> = rows.iter().map(|r| r.x).collect();
    let jacs: Vec<f64> = rows.iter().map(|r| r.jac).collect();
    let gap = RigidityGap::from_jacobians(&points, &jacs)?;
    let pointwise_deviation =
        map.isometry().map(|g| rows.iter().map(|r| g.apply(r.x).euclidean_distance(&r.y)).fold(0.0, f64::max));
    let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(RigidityReport { gap, points: rows.len(), pointwise_deviation, max_residual })
}

impl RigidityReport {
    pub fn render(&self, map: &MapSpec) -> String {
        let mut s = format!(
            "map = {map}\npoints = {}\nrigidity_gap = {}\nargmax_index = {}\nargmax_u = {}\nargmax_v = {}\nmax_abs_jac = {}\nmax_residual = {}\n",
            self.points,
            real(self.gap.max_deviation),
            self.gap.index,
            real(self.gap.argmax.u()),
            real(self.gap.argmax.v()),
            real(self.gap.max_abs_jac),
            real(self.max_residual),
        );
        if let Some(d) = self.pointwise_deviation {
            s.push_str(&format!("pointwise_deviation = {}\n", real(d)));
        }
        s
    }
}
