use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptv_cli::output::write_json;
use ptv_cli::report::ComparisonReport;
use ptv_cli::{check, simulate, sweep, CheckOptions, CliError, ScenarioConfig};

#[derive(Parser)]
#[command(name = "ptv", version, about = "Translation-vector kinematics driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the oracle and each configured formulation, write CSV and a report.
    Simulate { config: PathBuf },
    /// Terminal error at several step counts and the observed order.
    Sweep {
        config: PathBuf,
        /// Comma-separated, at least three, each at least twice the previous.
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<usize>,
    },
    /// Randomized identity, equivalence and roundtrip suites.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Replace every default tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Force σ = 0 in every sample.
        #[arg(long)]
        zero_rotation: bool,
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn print_report(r: &ComparisonReport) {
    for f in &r.formulations {
        let t = &f.terminal;
        println!(
            "{:<16} sp rel {:.3e}  zeta rel {:.3e}  dint rel {:.3e}",
            f.name, t.sp_rel, t.zeta_map_rel, t.dint_rel
        );
    }
    for d in &r.discrepancies {
        println!(
            "{} vs {}: sp rel {:.3e}  zeta rel {:.3e}",
            d.a, d.b, d.sp_rel, d.zeta_rel
        );
    }
    for c in &r.convergence {
        println!("{}", c.formulation);
        for (k, (n, e)) in c.steps.iter().zip(&c.errors).enumerate() {
            match k.checked_sub(1).map(|i| &c.orders[i]) {
                Some(o) => match o.order {
                    Some(p) => println!("  {n:>8}  {e:.3e}  order {p:.3} {}", o.status.as_str()),
                    None => println!("  {n:>8}  {e:.3e}  {}", o.status.as_str()),
                },
                None => println!("  {n:>8}  {e:.3e}"),
            }
        }
        match c.estimated_order {
            Some(p) => println!("  estimated order {p:.3}"),
            None => println!("  estimated order: floor"),
        }
    }
    for i in &r.identities {
        let mark = if i.passed { "ok" } else { "FAIL" };
        println!(
            "{:<30} {:.3e}  (tol {:.0e}) {mark}",
            i.name, i.max_residual, i.tolerance
        );
    }
    for f in &r.failures {
        eprintln!("failed: {f}");
    }
    println!("{}", if r.passed { "passed" } else { "FAILED" });
}

fn run(cli: Cli) -> Result<ComparisonReport, CliError> {
    match cli.command {
        Command::Simulate { config } => {
            let c = ScenarioConfig::load(&config)?;
            simulate(&c, &c.output_dir())
        }
        Command::Sweep { config, steps } => {
            let c = ScenarioConfig::load(&config)?;
            sweep(&c, &steps, &c.output_dir())
        }
        Command::Check {
            seed,
            samples,
            tolerance,
            zero_rotation,
            report,
        } => {
            let r = check(&CheckOptions {
                seed,
                samples,
                tolerance,
                zero_rotation,
            })?;
            if let Some(path) = report {
                write_json(&path, &r)?;
            }
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(r) => {
            print_report(&r);
            ExitCode::from(if r.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("ptv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
