//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::process::ExitCode;
use std::time::Instant;

use dext::{pinch_sweep, RunConfig, SweepRow};
use dext_core::disk::exp_frame;
use dext_core::{
    de_extend, differential, fd_jacobian, lambda_formulas, CircleMap, DifferentialReport, DiskPoint, MobiusIsometry,
    PinchQuadrature, QuadratureRule, RigidityGap, SampledMonotone, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Pinch(0.5) rigidity gap on the 10×12 grid out to distance 3, first build.
const FROZEN_PINCH_GAP: f64 = 0.0719;
/// Lower bounds of the compensated sweep columns, first build (row minimum at ε = 0.2).
const FROZEN_C_JAC: f64 = 0.835;
const FROZEN_C_LAMBDA1: f64 = 0.835;

const SEED: u64 = 20_240_601;

fn pinch_rule() -> QuadratureRule {
    QuadratureRule::theta_substitution(40.0, 1024).unwrap()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

/// Worst residual and trace values seen across every solve and differential.
#[derive(Default)]
struct Audit {
    solves: usize,
    max_residual: f64,
    differentials: usize,
    max_trace_h_dev: f64,
    max_trace_g: f64,
}

thread_local! {
    static AUDIT: RefCell<Audit> = RefCell::new(Audit { max_trace_g: f64::NEG_INFINITY, ..Default::default() });
}

fn merge(a: Audit) {
    AUDIT.with(|g| {
        let mut g = g.borrow_mut();
        g.solves += a.solves;
        g.max_residual = g.max_residual.max(a.max_residual);
        g.differentials += a.differentials;
        g.max_trace_h_dev = g.max_trace_h_dev.max(a.max_trace_h_dev);
        g.max_trace_g = g.max_trace_g.max(a.max_trace_g);
    });
}

fn audited(r: &DifferentialReport) -> Audit {
    Audit {
        solves: 1,
        max_residual: r.residual(),
        differentials: 1,
        max_trace_h_dev: (r.h.trace() - 1.0).abs(),
        max_trace_g: r.g.trace(),
    }
}

fn fold(audits: impl IntoIterator<Item = Audit>) {
    for a in audits {
        merge(a);
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: u32, name: &str, run: impl FnOnce() -> Result<Outcome, String>) -> bool {
    let start = Instant::now();
    let (pass, detail) = match run() {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "criterion {n} [{name}]: {} | {detail} | {:.2}s",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    pass
}

fn random_mobius(rng: &mut ChaCha8Rng) -> MobiusIsometry {
    let (r, a) = (0.6 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
    MobiusIsometry::new(rng.gen_range(0.0..TAU), r * a.cos(), r * a.sin(), false).unwrap()
}

fn polar_grid(radii: &[f64], angles: usize) -> Vec<DiskPoint> {
    radii
        .iter()
        .flat_map(|&d| (0..angles).map(move |k| DiskPoint::from_polar(d, TAU * k as f64 / angles as f64).unwrap()))
        .collect()
}

fn criterion_1() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let grid = polar_grid(&(1..=10).map(|k| 0.25 * k as f64).collect::<Vec<_>>(), 12);
    let rule = QuadratureRule::default();
    let (mut gap, mut jac_dev) = (0.0_f64, 0.0_f64);
    for _ in 0..5 {
        let g = random_mobius(&mut rng);
        let map = CircleMap::mobius(g).map_err(|e| e.to_string())?;
        let rows: Vec<(f64, f64, Audit)> = grid
            .par_iter()
            .map(|&x| {
                let r = differential(&map, x, &rule, &cfg()).map_err(|e| e.to_string())?;
                Ok((g.apply(x).euclidean_distance(&r.point()), (r.abs_jac() - 1.0).abs(), audited(&r)))
            })
            .collect::<Result<_, String>>()?;
        for (d, j, a) in rows {
            gap = gap.max(d);
            jac_dev = jac_dev.max(j);
            merge(a);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome {
        pass: gap <= 1e-7 && jac_dev <= 1e-6 && secs <= 60.0,
        detail: format!(
            "5 maps x {} points: max |F(x) - g(x)| = {gap:.2e}, max ||Jac| - 1| = {jac_dev:.2e}",
            grid.len()
        ),
    })
}

fn criterion_2() -> Result<Outcome, String> {
    let map = CircleMap::pinch(0.5).unwrap();
    let grid = polar_grid(&(1..=10).map(|k| 0.3 * k as f64).collect::<Vec<_>>(), 12);
    let rule = pinch_rule();
    let reports: Vec<DifferentialReport> = grid
        .par_iter()
        .map(|&x| differential(&map, x, &rule, &cfg()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    fold(reports.iter().map(audited));
    let jacs: Vec<f64> = reports.iter().map(|r| r.jac).collect();
    let gap = RigidityGap::from_jacobians(&grid, &jacs).map_err(|e| e.to_string())?;
    // strict positivity is the criterion; the frozen value guards against regressions
    let positive = gap.max_deviation > 0.0;
    let regression_ok = gap.max_deviation >= FROZEN_PINCH_GAP;
    Ok(Outcome {
        pass: positive && regression_ok,
        detail: format!(
            "gap = {:.9} > 0 {positive}, >= frozen margin {FROZEN_PINCH_GAP} {regression_ok}, argmax ({:.4}, {:.4})",
            gap.max_deviation,
            gap.argmax.u(),
            gap.argmax.v()
        ),
    })
}

fn criterion_3() -> Result<Outcome, String> {
    let start = Instant::now();
    let eps = [0.2, 0.1, 0.05, 0.02, 0.01];
    let base = RunConfig::default();
    let rows = pinch_sweep(&eps, &base).map_err(|e| e.to_string())?;
    let fine = pinch_sweep(&eps, &base.refined()).map_err(|e| e.to_string())?;
    let min = |rows: &[SweepRow], f: fn(&SweepRow) -> f64| rows.iter().map(f).fold(f64::INFINITY, f64::min);
    let max = |rows: &[SweepRow], f: fn(&SweepRow) -> f64| rows.iter().map(f).fold(f64::NEG_INFINITY, f64::max);

    let increasing = rows.windows(2).all(|w| w[1].jac_origin > w[0].jac_origin);
    let c = min(&rows, |r| r.jac_times_eps_ln2eps);
    let c_fine = min(&fine, |r| r.jac_times_eps_ln2eps);
    let drift = (c_fine / c - 1.0).abs();
    let band = max(&rows, |r| r.lambda2_over_eps) / min(&rows, |r| r.lambda2_over_eps);
    let c1 = min(&rows, |r| r.lambda1_times_eps2_ln2eps);
    let cross = max(&rows, |r| r.cross_check_rel_gap);
    for r in rows.iter().chain(&fine) {
        merge(audited(r.differential.as_ref().ok_or("differential at O failed")?));
    }
    let secs = start.elapsed().as_secs_f64();
    let (a, b, cc, d) = (increasing, c >= FROZEN_C_JAC && drift < 0.1, band <= 4.0, c1 >= FROZEN_C_LAMBDA1);
    Ok(Outcome {
        pass: a && b && cc && d && secs <= 30.0,
        detail: format!(
            "(a) jac increasing {a}; (b) min jac*eps*ln^2 = {c:.6} >= {FROZEN_C_JAC}, drift on doubling {drift:.1e}; \
             (c) lambda2/eps band ratio {band:.6}; (d) min lambda1*eps^2*ln^2 = {c1:.6} >= {FROZEN_C_LAMBDA1}; \
             differential cross-check max rel gap {cross:.1e}"
        ),
    })
}

fn criterion_4() -> Result<Outcome, String> {
    let rule = pinch_rule();
    let mut worst = 0.0_f64;
    let mut parts = Vec::new();
    for eps in [1.0, 0.5, 0.1] {
        let r = differential(&CircleMap::pinch(eps).unwrap(), DiskPoint::ORIGIN, &rule, &cfg())
            .map_err(|e| e.to_string())?;
        merge(audited(&r));
        let l = lambda_formulas(eps, PinchQuadrature::default()).map_err(|e| e.to_string())?;
        let e1 = (r.d.get(0, 0) / l.lambda1 - 1.0).abs();
        let e2 = (r.d.get(1, 1) / l.lambda2 - 1.0).abs();
        worst = worst.max(e1).max(e2);
        parts.push(format!("eps {eps}: {e1:.1e}/{e2:.1e}"));
    }
    Ok(Outcome { pass: worst <= 1e-6, detail: format!("relative diagonal gaps {}", parts.join(", ")) })
}

fn criterion_5() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let step = 1e-4;
    let mut cases = Vec::new();
    for _ in 0..20 {
        let (map, name, rule) = match rng.gen_range(0..4) {
            0 => (CircleMap::Identity, "identity", QuadratureRule::default()),
            1 => (CircleMap::mobius(random_mobius(&mut rng)).unwrap(), "mobius", QuadratureRule::default()),
            2 => (CircleMap::pinch(0.3).unwrap(), "pinch(0.3)", pinch_rule()),
            _ => {
                let (a, k) = (rng.gen_range(0.1..0.4), rng.gen_range(1..=3) as f64);
                let s = SampledMonotone::sample(256, |t| t + a * (k * t).sin() / k).unwrap();
                (CircleMap::Sampled(s), "sampled", QuadratureRule::default())
            }
        };
        let x = DiskPoint::from_polar(rng.gen_range(0.0..1.5), rng.gen_range(0.0..TAU)).unwrap();
        cases.push((map, name, rule, x));
    }
    let results: Vec<(f64, &str, Audit)> = cases
        .par_iter()
        .map(|(map, name, rule, x)| {
            let r = differential(map, *x, rule, &cfg()).map_err(|e| e.to_string())?;
            let fd = fd_jacobian(map, *x, step, rule, &cfg()).map_err(|e| e.to_string())?;
            let mut audit = audited(&r);
            // the four displaced solves inside the finite difference
            for e in [[step, 0.0], [-step, 0.0], [0.0, step], [0.0, -step]] {
                let s = de_extend(map, exp_frame(*x, e), rule, &cfg()).map_err(|e| e.to_string())?;
                audit.solves += 1;
                audit.max_residual = audit.max_residual.max(s.gradient_norm);
            }
            Ok((fd.matrix.max_abs_diff(&r.d), *name, audit))
        })
        .collect::<Result<_, String>>()?;
    let mut worst = (0.0_f64, "");
    let mut counts = std::collections::BTreeMap::new();
    for (gap, name, audit) in results {
        if gap > worst.0 {
            worst = (gap, name);
        }
        *counts.entry(name).or_insert(0) += 1;
        merge(audit);
    }
    Ok(Outcome {
        pass: worst.0 <= 1e-4,
        detail: format!("20 pairs {counts:?}: max entrywise gap {:.2e} ({})", worst.0, worst.1),
    })
}

fn criterion_8() -> Result<Outcome, String> {
    let rule = pinch_rule();
    let (mut at_origin, mut off_axis) = (0.0_f64, 0.0_f64);
    for eps in [0.5, 0.1, 0.02] {
        let map = CircleMap::pinch(eps).unwrap();
        let o = de_extend(&map, DiskPoint::ORIGIN, &rule, &cfg()).map_err(|e| e.to_string())?;
        at_origin = at_origin.max(o.point.to_complex().norm());
        for d in [0.5, 1.0, 2.0] {
            for q in 0..4 {
                let x = DiskPoint::from_polar(d, FRAC_PI_2 * q as f64).unwrap();
                let y = de_extend(&map, x, &rule, &cfg()).map_err(|e| e.to_string())?.point;
                let (off, along, sign) = if q % 2 == 0 { (y.v(), y.u(), x.u()) } else { (y.u(), y.v(), x.v()) };
                if along * sign <= 0.0 {
                    return Ok(Outcome { pass: false, detail: format!("eps {eps}: {x:?} left its half-axis") });
                }
                off_axis = off_axis.max(off.abs());
            }
        }
    }
    Ok(Outcome {
        pass: at_origin <= 1e-9 && off_axis <= 1e-9,
        detail: format!("|F(O)| = {at_origin:.1e}, max off-axis coordinate {off_axis:.1e}"),
    })
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--nocapture`; a name filter
    // that matches nothing here skips the suite
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut all = true;
    all &= report(1, "isometry rigidity", criterion_1);
    all &= report(2, "non-isometry gap", criterion_2);
    all &= report(3, "pinching asymptotics", criterion_3);
    all &= report(4, "engine cross-validation", criterion_4);
    all &= report(5, "derivative consistency", criterion_5);
    let audit = AUDIT.with(|a| std::mem::take(&mut *a.borrow_mut()));
    all &= report(6, "first-variation residual", || {
        Ok(Outcome {
            pass: audit.max_residual <= 1e-10 && audit.solves > 0,
            detail: format!("{} solves in criteria 1-5, max residual {:.2e}", audit.solves, audit.max_residual),
        })
    });
    all &= report(7, "structural identities", || {
        Ok(Outcome {
            pass: audit.max_trace_h_dev <= 1e-8 && audit.max_trace_g <= 1.0 + 1e-8 && audit.differentials > 0,
            detail: format!(
                "{} differentials: max |tr H - 1| = {:.1e}, max tr G = {:.12}",
                audit.differentials, audit.max_trace_h_dev, audit.max_trace_g
            ),
        })
    });
    all &= report(8, "symmetry suite", criterion_8);
    println!("acceptance: {}", if all { "all criteria PASS" } else { "FAILURES above" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
