//! Experiments around the Douady–Earle extension: pinching sweeps, rigidity
//! scans and Jacobian grids, with CSV output. The numerics live in
//! [`dext_core`]; this crate adds configuration, file formats, parallel
//! scans and the `dext` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod map_spec;
pub mod scan;
pub mod sweep;
pub mod table;

pub use config::{PolarGrid, RuleChoice, RunConfig};
pub use map_spec::{MapSpec, MapSpecError};
pub use scan::{grid_rows, grid_table, j_lower_estimate, rigidity, GridRow, RigidityReport};
pub use sweep::{pinch_sweep, sweep_table, SweepRow};
