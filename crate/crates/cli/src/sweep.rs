//! `ptv sweep`: terminal error against the oracle at increasing step counts
//! and the observed order of convergence.

use std::path::Path;
use std::time::Instant;

use ptv_core::transvec::savage_matrix;
use ptv_core::{generate_ground_truth, rk4_integrate, Formulation};
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::output::{ensure_dir, num, write_csv, write_json};
use crate::report::{
    ComparisonReport, ConvergenceReport, OracleSummary, OrderEstimate, OrderStatus, RunTiming,
    Timings,
};
use crate::CliError;

/// Errors below this are treated as roundoff.
pub const ERROR_FLOOR: f64 = 1e-13;

/// Smallest acceptable order for RK4.
pub const MIN_ORDER: f64 = 3.5;

pub fn validate_steps(steps: &[usize]) -> Result<(), CliError> {
    if steps.len() < 3 {
        return Err(CliError::Usage(format!(
            "sweep needs at least 3 step counts, got {}",
            steps.len()
        )));
    }
    if steps[0] == 0 {
        return Err(CliError::Usage("step counts must be positive".into()));
    }
    for w in steps.windows(2) {
        if w[1] < 2 * w[0] {
            return Err(CliError::Usage(format!(
                "each step count must be at least twice the previous ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Terminal error is `|σ'_p − oracle σ'_p|` for the new-PTV formulations and
/// `|ζ − W(σ_oracle) oracle σ'_p|` for Savage's.
pub fn sweep(
    config: &ScenarioConfig,
    steps: &[usize],
    out_dir: &Path,
) -> Result<ComparisonReport, CliError> {
    validate_steps(steps)?;
    let profile = config.motion_profile()?;
    let start = Instant::now();
    let truth =
        generate_ground_truth(&profile, config.oracle.samples, config.oracle.refine_factor)?;
    let oracle_seconds = start.elapsed().as_secs_f64();
    let reference = truth.terminal();
    let zeta_ref = savage_matrix(&reference.sigma)? * reference.sp.value();

    let cases: Vec<(Formulation, usize)> = config
        .formulations
        .iter()
        .flat_map(|f| steps.iter().map(move |&n| (f.formulation(), n)))
        .collect();
    let results: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(f, n)| {
            let start = Instant::now();
            let run = rk4_integrate(f, &profile, 0.0, config.horizon, n)?;
            let s = run.terminal();
            let err = match f {
                Formulation::SavagePtv => (s.zeta.value() - zeta_ref).norm(),
                _ => (s.sp.value() - reference.sp.value()).norm(),
            };
            Ok((err, start.elapsed().as_secs_f64()))
        })
        .collect::<Result<_, CliError>>()?;

    let mut report = ComparisonReport::new("sweep");
    report.config = Some(config.clone());
    report.oracle = Some(OracleSummary {
        samples: config.oracle.samples,
        refine_factor: truth.refine_factor,
        refinement_change: truth.refinement_change,
    });
    let mut rows = Vec::new();
    for (f, chunk) in config.formulations.iter().zip(results.chunks(steps.len())) {
        let name = f.formulation().name();
        let errors: Vec<f64> = chunk.iter().map(|r| r.0).collect();
        let orders = pair_orders(steps, &errors);
        for o in &orders {
            if let (OrderStatus::Low, Some(p)) = (o.status, o.order) {
                report.fail(format!(
                    "{name} order {p:.3} from {} to {} steps is below {MIN_ORDER}",
                    o.coarse_steps, o.fine_steps
                ));
            }
        }
        for (k, (&n, &e)) in steps.iter().zip(&errors).enumerate() {
            let (order, status) = match k.checked_sub(1).map(|i| &orders[i]) {
                Some(o) => (o.order.map_or(String::new(), num), o.status.as_str()),
                None => (String::new(), ""),
            };
            rows.push(vec![
                name.to_string(),
                n.to_string(),
                num(e),
                order,
                status.into(),
            ]);
        }
        report.convergence.push(ConvergenceReport {
            formulation: name,
            steps: steps.to_vec(),
            estimated_order: fitted_order(steps, &errors),
            errors,
            orders,
        });
    }

    ensure_dir(out_dir)?;
    write_csv(
        &out_dir.join("convergence.csv"),
        &["formulation", "steps", "error", "order", "status"],
        &rows,
    )?;
    write_json(&out_dir.join("report.json"), &report)?;
    let timings = Timings {
        oracle_seconds,
        runs: cases
            .iter()
            .zip(&results)
            .map(|(&(f, n), r)| RunTiming {
                formulation: f.name(),
                steps: n,
                seconds: r.1,
            })
            .collect(),
    };
    write_json(&out_dir.join("timings.json"), &timings)?;
    Ok(report)
}

/// `log(e_coarse / e_fine) / log(n_fine / n_coarse)` for successive counts.
pub fn pair_orders(steps: &[usize], errors: &[f64]) -> Vec<OrderEstimate> {
    steps
        .windows(2)
        .zip(errors.windows(2))
        .map(|(n, e)| {
            let (order, status) = if e[1] < ERROR_FLOOR {
                (None, OrderStatus::Floor)
            } else {
                let p = (e[0] / e[1]).ln() / (n[1] as f64 / n[0] as f64).ln();
                (
                    Some(p),
                    if p < MIN_ORDER {
                        OrderStatus::Low
                    } else {
                        OrderStatus::Ok
                    },
                )
            };
            OrderEstimate {
                coarse_steps: n[0],
                fine_steps: n[1],
                order,
                status,
            }
        })
        .collect()
}

pub fn fitted_order(steps: &[usize], errors: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(errors)
        .filter(|(_, &e)| e >= ERROR_FLOOR)
        .map(|(&n, &e)| ((n as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(-sxy / sxx)
}
