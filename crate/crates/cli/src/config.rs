//! Scenario configuration (JSON). See `docs/config.md` for the schema.

use std::path::{Path, PathBuf};

use ptv_core::oracle::AxisSignal;
use ptv_core::{Formulation, MotionProfile, ProfileKind, Vec3};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable that replaces `output.dir`.
pub const OUTPUT_DIR_ENV: &str = "PTV_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub profile: ProfileSpec,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_formulations")]
    pub formulations: Vec<FormulationName>,
    #[serde(default)]
    pub oracle: OracleSettings,
    #[serde(default)]
    pub output: OutputSettings,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_horizon() -> f64 {
    1.0
}

fn default_steps() -> usize {
    10_000
}

fn default_formulations() -> Vec<FormulationName> {
    vec![
        FormulationName::ThrustVelocity,
        FormulationName::Vtv,
        FormulationName::SavagePtv,
    ]
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Constant {
        omega: [f64; 3],
        specific_force: [f64; 3],
    },
    Coning {
        half_angle: f64,
        cone_rate: f64,
        thrust: [f64; 3],
        thrust_rate: f64,
    },
    PolySinusoid {
        omega: [AxisSpec; 3],
        specific_force: [AxisSpec; 3],
    },
}

/// `Σ poly[k] t^k + amplitude · sin(frequency · t + phase)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AxisSpec {
    pub poly: Vec<f64>,
    pub amplitude: f64,
    pub frequency: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulationName {
    ThrustVelocity,
    Vtv,
    SavagePtv,
}

impl FormulationName {
    pub fn formulation(self) -> Formulation {
        match self {
            FormulationName::ThrustVelocity => Formulation::ThrustVelocity,
            FormulationName::Vtv => Formulation::Vtv,
            FormulationName::SavagePtv => Formulation::SavagePtv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSettings {
    /// Number of coarse intervals; the CSV has `samples + 1` rows.
    pub samples: usize,
    pub refine_factor: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            samples: 100,
            refine_factor: 512,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSettings {
    pub dir: PathBuf,
}

impl Default for OutputSettings {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative terminal error of `σ'_p`, `ζ` and the double integral
    /// against the oracle.
    pub oracle_relative: f64,
    /// Relative terminal difference between any two formulations.
    pub discrepancy_relative: f64,
    /// Scaled residual bound for the vector identities along the run.
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oracle_relative: 1e-9,
            discrepancy_relative: 1e-9,
            identity: 1e-12,
        }
    }
}

fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::from(a)
}

fn axis(a: &AxisSpec) -> AxisSignal {
    AxisSignal {
        poly: a.poly.clone(),
        amplitude: a.amplitude,
        frequency: a.frequency,
        phase: a.phase,
    }
}

impl ScenarioConfig {
    /// Parses and validates. Parse errors are anchored as `path:line:column`.
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        let config: Self = serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
            CliError::Usage(format!("{origin}:{}:{}: {msg}", e.line(), e.column()))
        })?;
        config
            .validate()
            .map_err(|m| CliError::Usage(format!("{origin}: {m}")))?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(format!("horizon must be positive, got {}", self.horizon));
        }
        if self.steps == 0 {
            return Err("steps must be positive".into());
        }
        if self.formulations.is_empty() {
            return Err("at least one formulation is required".into());
        }
        let mut seen = self.formulations.clone();
        seen.sort_by_key(|f| *f as u8);
        seen.dedup();
        if seen.len() != self.formulations.len() {
            return Err("formulations are listed more than once".into());
        }
        let o = &self.oracle;
        if o.samples == 0 {
            return Err("oracle.samples must be positive".into());
        }
        if o.refine_factor < 8 {
            return Err(format!(
                "oracle.refine_factor must be at least 8, got {}",
                o.refine_factor
            ));
        }
        if !self.steps.is_multiple_of(o.samples) {
            return Err(format!(
                "steps ({}) must be a multiple of oracle.samples ({})",
                self.steps, o.samples
            ));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("oracle_relative", t.oracle_relative),
            ("discrepancy_relative", t.discrepancy_relative),
            ("identity", t.identity),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(format!("tolerances.{name} must be a non-negative number"));
            }
        }
        Ok(())
    }

    pub fn motion_profile(&self) -> Result<MotionProfile, CliError> {
        let kind = match &self.profile {
            ProfileSpec::Constant {
                omega,
                specific_force,
            } => ProfileKind::Constant {
                omega: vec3(*omega),
                specific_force: vec3(*specific_force),
            },
            ProfileSpec::Coning {
                half_angle,
                cone_rate,
                thrust,
                thrust_rate,
            } => ProfileKind::Coning {
                half_angle: *half_angle,
                cone_rate: *cone_rate,
                thrust: vec3(*thrust),
                thrust_rate: *thrust_rate,
            },
            ProfileSpec::PolySinusoid {
                omega,
                specific_force,
            } => ProfileKind::PolySinusoid {
                omega: [axis(&omega[0]), axis(&omega[1]), axis(&omega[2])],
                specific_force: [
                    axis(&specific_force[0]),
                    axis(&specific_force[1]),
                    axis(&specific_force[2]),
                ],
            },
        };
        MotionProfile::new(kind, self.horizon).map_err(CliError::from)
    }

    /// `output.dir`, unless overridden by `PTV_OUTPUT_DIR`.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output.dir.clone(),
        }
    }
}
