//! The pinching sweep: closed-form eigenvalues at `O` over a list of `ε`,
//! with compensated-rate columns and a cross-check against the generic
//! differential.

use std::path::Path;

use anyhow::{bail, Result};
use dext_core::{differential, lambda_formulas, CircleMap, DifferentialReport, DiskPoint};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::map_spec::MapSpec;
use crate::table::{real, Table};

/// Relative gap between the closed form and the generic differential above
/// which a row is flagged.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

pub const COLUMNS: [&str; 10] = [
    "epsilon",
    "lambda1",
    "lambda2",
    "jac_origin",
    "lambda2_over_eps",
    "jac_times_eps_ln2eps",
    "lambda1_times_eps2_ln2eps",
    "jac_differential",
    "cross_check_rel_gap",
    "flags",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub jac_origin: f64,
    pub lambda2_over_eps: f64,
    pub jac_times_eps_ln2eps: f64,
    pub lambda1_times_eps2_ln2eps: f64,
    /// `det dF` at `O` from the generic differential; NaN if it failed.
    pub jac_differential: f64,
    pub cross_check_rel_gap: f64,
    pub flags: Vec<String>,
    /// The generic differential at `O`, when it succeeded.
    pub differential: Option<DifferentialReport>,
}

impl SweepRow {
    pub fn compute(epsilon: f64, cfg: &RunConfig) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            bail!("epsilon {epsilon} outside (0, 1]");
        }
        let lam = lambda_formulas(epsilon, cfg.pinch_quadrature())?;
        let ln2 = epsilon.ln().powi(2);
        let mut flags = Vec::new();
        if lam.accuracy_warning {
            flags.push("quadrature-truncation".to_string());
        }
        let spec = MapSpec::Pinch { epsilon };
        let rule = cfg.rule_for(&spec)?;
        let report = match differential(&CircleMap::pinch(epsilon)?, DiskPoint::ORIGIN, &rule, &cfg.solver) {
            Ok(r) => Some(r),
            Err(e) => {
                flags.push(format!("differential-failed: {e}").replace(',', ";"));
                None
            }
        };
        let jac_differential = report.map_or(f64::NAN, |r| r.jac);
        let cross_check_rel_gap = (jac_differential / lam.jac_origin - 1.0).abs();
        if !(cross_check_rel_gap <= CROSS_CHECK_TOL) && jac_differential.is_finite() {
            flags.push("cross-check".to_string());
        }
        Ok(SweepRow {
            epsilon,
            lambda1: lam.lambda1,
            lambda2: lam.lambda2,
            jac_origin: lam.jac_origin,
            lambda2_over_eps: lam.lambda2 / epsilon,
            jac_times_eps_ln2eps: lam.jac_origin * epsilon * ln2,
            lambda1_times_eps2_ln2eps: lam.lambda1 * epsilon * epsilon * ln2,
            jac_differential,
            cross_check_rel_gap,
            flags,
            differential: report,
        })
    }

    fn cells(&self) -> Vec<String> {
        let flags = if self.flags.is_empty() { "none".to_string() } else { self.flags.join(";") };
        vec![
            real(self.epsilon),
            real(self.lambda1),
            real(self.lambda2),
            real(self.jac_origin),
            real(self.lambda2_over_eps),
            real(self.jac_times_eps_ln2eps),
            real(self.lambda1_times_eps2_ln2eps),
            real(self.jac_differential),
            real(self.cross_check_rel_gap),
            flags,
        ]
    }
}

/// Rows in the order of `eps_list`, computed in parallel.
pub fn pinch_sweep(eps_list: &[f64], cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    if eps_list.is_empty() {
        bail!("empty epsilon list");
    }
    eps_list.par_iter().map(|&e| SweepRow::compute(e, cfg)).collect()
}

pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(COLUMNS);
    for r in rows {
        t.push(r.cells());
    }
    t
}

/// Python script that draws `jac_origin` against `ε` on log-log axes from the
/// CSV at `csv` (read relative to the script's own directory).
pub fn plot_script(csv: &Path) -> String {
    let name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let png = csv.with_extension("png").file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    format!(
        r##"#!/usr/bin/env python3
"""Log-log plot of the Jacobian at the origin against epsilon."""
import csv
import math
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "{name}")
with open(path) as f:
    rows = [r for r in csv.DictReader(line for line in f if not line.startswith("#"))]
eps = [float(r["epsilon"]) for r in rows]
jac = [float(r["jac_origin"]) for r in rows]
ref = [1.0 / (e * math.log(e) ** 2) if e < 1 else float("nan") for e in eps]

fig, ax = plt.subplots(figsize=(5, 4))
ax.loglog(eps, jac, "o-", label="Jac at O")
ax.loglog(eps, ref, "--", label="1/(eps ln^2 eps)")
ax.set_xlabel("epsilon")
ax.set_ylabel("Jacobian")
ax.legend()
fig.tight_layout()
out = sys.argv[2] if len(sys.argv) > 2 else os.path.join(here, "{png}")
fig.savefig(out, dpi=150)
print(out)
"##
    )
}
