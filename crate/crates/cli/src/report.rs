//! Machine-readable run summaries. Wall-clock times are kept out of the
//! report so identical inputs give byte-identical files; see [`Timings`].

use serde::Serialize;

use crate::config::ScenarioConfig;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub command: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ScenarioConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub formulations: Vec<FormulationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub convergence: Vec<ConvergenceReport>,
}

impl ComparisonReport {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            passed: true,
            failures: Vec::new(),
            config: None,
            oracle: None,
            formulations: Vec::new(),
            discrepancies: Vec::new(),
            identities: Vec::new(),
            convergence: Vec::new(),
        }
    }

    /// Records a failure if `value` exceeds `bound`, or is NaN.
    pub fn require(&mut self, what: String, value: f64, bound: f64) {
        if value.is_nan() || value > bound {
            self.fail(format!("{what}: {value:e} exceeds {bound:e}"));
        }
    }

    pub fn fail(&mut self, message: String) {
        self.failures.push(message);
        self.passed = false;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub refine_factor: usize,
    pub refinement_change: f64,
}

/// Terminal errors against the oracle. Each `*_rel` divides by the norm of
/// the oracle value, or is the absolute error when that norm is zero.
#[derive(Debug, Clone, Serialize)]
pub struct TerminalErrors {
    pub sp_abs: f64,
    pub sp_rel: f64,
    pub zeta_map_abs: f64,
    pub zeta_map_rel: f64,
    pub dint_abs: f64,
    pub dint_rel: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulationReport {
    pub name: &'static str,
    pub steps: usize,
    pub csv: String,
    pub terminal: TerminalErrors,
    pub max_err_sp: f64,
    pub max_err_zeta_map: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub a: &'static str,
    pub b: &'static str,
    pub sp_rel: f64,
    pub zeta_rel: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStatus {
    Ok,
    /// Finer error already at the roundoff floor; no order is estimated.
    Floor,
    /// Below the expected order for RK4.
    Low,
}

impl OrderStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderStatus::Ok => "ok",
            OrderStatus::Floor => "floor",
            OrderStatus::Low => "low",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderEstimate {
    pub coarse_steps: usize,
    pub fine_steps: usize,
    pub order: Option<f64>,
    pub status: OrderStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub formulation: &'static str,
    pub steps: Vec<usize>,
    pub errors: Vec<f64>,
    pub orders: Vec<OrderEstimate>,
    /// Least-squares slope of `log error` against `log h` over the counts
    /// whose error is above the floor.
    pub estimated_order: Option<f64>,
}

/// Wall-clock seconds per run, written next to the report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub oracle_seconds: f64,
    pub runs: Vec<RunTiming>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunTiming {
    pub formulation: &'static str,
    pub steps: usize,
    pub seconds: f64,
}
