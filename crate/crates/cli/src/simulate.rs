//! `ptv simulate`: oracle plus each configured formulation, per-sample CSV
//! and a comparison report.

use std::path::Path;
use std::time::Instant;

use ptv_core::transvec::{
    double_integral, savage_matrix, thrust_velocity_residuals, triple_product_residuals,
};
use ptv_core::{
    generate_ground_truth, rk4_integrate, GroundTruth, InputSource, MotionProfile, Trajectory,
};
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::output::{ensure_dir, num, write_csv, write_json};
use crate::report::{
    ComparisonReport, Discrepancy, FormulationReport, IdentityResult, OracleSummary, RunTiming,
    TerminalErrors, Timings,
};
use crate::{relative, CliError};

pub const CSV_HEADER: [&str; 18] = [
    "t",
    "sigma_x",
    "sigma_y",
    "sigma_z",
    "sp_x",
    "sp_y",
    "sp_z",
    "zeta_x",
    "zeta_y",
    "zeta_z",
    "oracle_sp_x",
    "oracle_sp_y",
    "oracle_sp_z",
    "oracle_dint_x",
    "oracle_dint_y",
    "oracle_dint_z",
    "err_sp",
    "err_zeta_map",
];

pub fn csv_name(formulation: &str) -> String {
    format!("trajectory_{formulation}.csv")
}

struct Run {
    name: &'static str,
    trajectory: Trajectory,
    seconds: f64,
}

/// Runs the scenario and writes `trajectory_<name>.csv`, `report.json` and
/// `timings.json` into `out_dir`.
pub fn simulate(config: &ScenarioConfig, out_dir: &Path) -> Result<ComparisonReport, CliError> {
    let profile = config.motion_profile()?;
    let start = Instant::now();
    let truth =
        generate_ground_truth(&profile, config.oracle.samples, config.oracle.refine_factor)?;
    let oracle_seconds = start.elapsed().as_secs_f64();

    let runs: Vec<Run> = config
        .formulations
        .par_iter()
        .map(|f| {
            let start = Instant::now();
            let trajectory =
                rk4_integrate(f.formulation(), &profile, 0.0, config.horizon, config.steps)?;
            Ok(Run {
                name: f.formulation().name(),
                trajectory,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect::<Result<_, CliError>>()?;

    ensure_dir(out_dir)?;
    let mut report = ComparisonReport::new("simulate");
    report.config = Some(config.clone());
    report.oracle = Some(OracleSummary {
        samples: config.oracle.samples,
        refine_factor: truth.refine_factor,
        refinement_change: truth.refinement_change,
    });
    let tol = config.tolerances;
    let stride = config.steps / config.oracle.samples;
    let mut tri_max = 0.0f64;
    let mut tv_max = 0.0f64;

    for run in &runs {
        let (rows, summary) = compare(run, &truth, stride)?;
        write_csv(&out_dir.join(&summary.csv), &CSV_HEADER, &rows)?;
        let t = &summary.terminal;
        report.require(
            format!("{} sp vs oracle", run.name),
            t.sp_rel,
            tol.oracle_relative,
        );
        report.require(
            format!("{} zeta vs mapped oracle", run.name),
            t.zeta_map_rel,
            tol.oracle_relative,
        );
        report.require(
            format!("{} double integral vs oracle", run.name),
            t.dint_rel,
            tol.oracle_relative,
        );
        report.formulations.push(summary);

        let (a, b) = identity_maxima(run, &truth, &profile, stride)?;
        tri_max = tri_max.max(a);
        tv_max = tv_max.max(b);
    }

    for (name, max) in [("triple_product", tri_max), ("thrust_velocity", tv_max)] {
        report.identities.push(IdentityResult {
            name: name.into(),
            max_residual: max,
            tolerance: tol.identity,
            passed: max <= tol.identity,
        });
        report.require(format!("{name} identities"), max, tol.identity);
    }

    for (i, a) in runs.iter().enumerate() {
        for b in &runs[i + 1..] {
            let (sa, sb) = (a.trajectory.terminal(), b.trajectory.terminal());
            let d = Discrepancy {
                a: a.name,
                b: b.name,
                sp_rel: relative(
                    (sa.sp.value() - sb.sp.value()).norm(),
                    sa.sp.value().norm().max(sb.sp.value().norm()),
                ),
                zeta_rel: relative(
                    (sa.zeta.value() - sb.zeta.value()).norm(),
                    sa.zeta.value().norm().max(sb.zeta.value().norm()),
                ),
            };
            let what = format!("{} vs {}", a.name, b.name);
            report.require(format!("{what} sp"), d.sp_rel, tol.discrepancy_relative);
            report.require(format!("{what} zeta"), d.zeta_rel, tol.discrepancy_relative);
            report.discrepancies.push(d);
        }
    }

    write_json(&out_dir.join("report.json"), &report)?;
    let timings = Timings {
        oracle_seconds,
        runs: runs
            .iter()
            .map(|r| RunTiming {
                formulation: r.name,
                steps: config.steps,
                seconds: r.seconds,
            })
            .collect(),
    };
    write_json(&out_dir.join("timings.json"), &timings)?;
    Ok(report)
}

/// CSV rows at the oracle sample times and the error summary they imply.
fn compare(
    run: &Run,
    truth: &GroundTruth,
    stride: usize,
) -> Result<(Vec<Vec<String>>, FormulationReport), CliError> {
    let mut rows = Vec::with_capacity(truth.samples.len());
    let (mut max_sp, mut max_zeta) = (0.0f64, 0.0f64);
    for (k, sample) in truth.samples.iter().enumerate() {
        let s = &run.trajectory.states[k * stride];
        let oracle_sp = sample.sp.value();
        let err_sp = (s.sp.value() - oracle_sp).norm();
        let err_zeta = (s.zeta.value() - savage_matrix(&s.sigma)? * oracle_sp).norm();
        max_sp = max_sp.max(err_sp);
        max_zeta = max_zeta.max(err_zeta);
        let mut row = vec![num(s.t)];
        for v in [
            s.sigma.vector(),
            s.sp.value(),
            s.zeta.value(),
            oracle_sp,
            &sample.double_integral,
        ] {
            row.extend(v.iter().map(|&x| num(x)));
        }
        row.push(num(err_sp));
        row.push(num(err_zeta));
        rows.push(row);
    }

    let s = run.trajectory.terminal();
    let o = truth.terminal();
    let zeta_ref = savage_matrix(&s.sigma)? * o.sp.value();
    let dint = double_integral(&s.sigma, &s.sp)?;
    let sp_abs = (s.sp.value() - o.sp.value()).norm();
    let zeta_abs = (s.zeta.value() - zeta_ref).norm();
    let dint_abs = (dint - o.double_integral).norm();
    let terminal = TerminalErrors {
        sp_abs,
        sp_rel: relative(sp_abs, o.sp.value().norm()),
        zeta_map_abs: zeta_abs,
        zeta_map_rel: relative(zeta_abs, zeta_ref.norm()),
        dint_abs,
        dint_rel: relative(dint_abs, o.double_integral.norm()),
    };
    Ok((
        rows,
        FormulationReport {
            name: run.name,
            steps: run.trajectory.states.len() - 1,
            csv: csv_name(run.name),
            terminal,
            max_err_sp: max_sp,
            max_err_zeta_map: max_zeta,
        },
    ))
}

/// Largest triple-product residual on `(σ, σ'_p, ω)` and thrust-velocity
/// residual on `(σ, oracle σ'_v)` over the sample times.
fn identity_maxima(
    run: &Run,
    truth: &GroundTruth,
    profile: &MotionProfile,
    stride: usize,
) -> Result<(f64, f64), CliError> {
    let (mut tri, mut tv) = (0.0f64, 0.0f64);
    for (k, sample) in truth.samples.iter().enumerate() {
        let s = &run.trajectory.states[k * stride];
        let (omega, _) = profile.inputs(sample.t)?;
        for r in triple_product_residuals(s.sigma.vector(), s.sp.value(), &omega) {
            tri = tri.max(r);
        }
        for r in thrust_velocity_residuals(&s.sigma, &sample.sv)? {
            tv = tv.max(r);
        }
    }
    Ok((tri, tv))
}
