//! Declarative experiment scripts: a lattice, a list of operations, the
//! measurements to take and optional self-checks.

mod builtins;
mod export;
mod report;
mod run;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::NoiseModel;
use crate::lattice::{AnyonKind, LatticeDescriptor};
use crate::optics::SourceWeighting;
use crate::pauli::Pauli;
use crate::stabilizer::Clifford1;

pub use builtins::{builtin, builtin_names, builtins, list_builtins, BuiltinInfo};
pub use export::{export, ExportFormat, ExportedFile};
pub use report::{
    AnalysisReport, Check, CurveRow, OccupancyReport, OperatorValue, Overlap, PlaquetteValue,
    Report, SourceReport,
};
pub use run::{run, run_all, RunOptions};

pub const SCENARIO_SCHEMA: &str = "toric-scenario/1";
pub const REPORT_SCHEMA: &str = "toric-report/1";
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Stabilizer,
    Statevector,
    #[default]
    Both,
}

impl Backend {
    pub fn uses_stabilizer(self) -> bool {
        matches!(self, Backend::Stabilizer | Backend::Both)
    }

    pub fn uses_statevector(self) -> bool {
        matches!(self, Backend::Statevector | Backend::Both)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Stabilizer => "stabilizer",
            Backend::Statevector => "statevector",
            Backend::Both => "both",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stabilizer" => Ok(Backend::Stabilizer),
            "statevector" => Ok(Backend::Statevector),
            "both" => Ok(Backend::Both),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }
}

/// Starting state before any operation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    #[default]
    Vacuum,
    /// Post-selected output of the photonic GHZ source (minimal lattice only).
    Source {
        #[serde(default)]
        weighting: SourceWeighting,
    },
}

/// Qubits are given as lattice labels (1-based on the minimal lattice).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    Pauli {
        pauli: Pauli,
        qubit: usize,
    },
    PauliString {
        string: String,
    },
    Clifford {
        gate: Clifford1,
        qubit: usize,
    },
    /// Loop operator enclosing a region of S plaquettes.
    Loop {
        plaquettes: Vec<usize>,
    },
    /// Shortest string creating an anyon pair on two host plaquettes.
    String {
        anyon: AnyonKind,
        from: usize,
        to: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurveRequest {
    /// Analyser angles in radians; defaults to 16 settings over [0, π).
    pub gammas: Option<Vec<f64>>,
}

/// Operations applied after the main sequence; the report gives
/// `<Ψ_before|Ψ_after>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidingCheck {
    pub operations: Vec<Operation>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Measurements {
    pub correlation_curve: Option<CurveRequest>,
    pub z_populations: bool,
    pub occupancy: bool,
    pub plaquettes: bool,
    pub energy: bool,
    pub expectations: Vec<String>,
    pub braiding: Option<BraidingCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NoiseSpec {
    /// `"calibrated"` or `"none"`.
    Preset(String),
    Model(NoiseModel),
}

impl NoiseSpec {
    pub fn resolve(&self) -> Result<NoiseModel> {
        match self {
            NoiseSpec::Preset(name) => match name.as_str() {
                "calibrated" => Ok(NoiseModel::calibrated()),
                "none" => Ok(NoiseModel::NONE),
                other => Err(Error::Scenario(format!("unknown noise preset {other:?}"))),
            },
            NoiseSpec::Model(m) => {
                m.validate()?;
                Ok(*m)
            }
        }
    }
}

fn default_resamples() -> usize {
    crate::experiment::DEFAULT_RESAMPLES
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub events_per_setting: u64,
    #[serde(default)]
    pub seed: u64,
    /// Bootstrap resamples for error bars; 0 disables them.
    #[serde(default = "default_resamples")]
    pub resamples: usize,
}

/// A target value, optionally with its own tolerance.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Exact(f64),
    Within { value: f64, tolerance: f64 },
}

impl Target {
    pub fn value(self) -> f64 {
        match self {
            Target::Exact(v) | Target::Within { value: v, .. } => v,
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Target::Exact(_) => DEFAULT_TOLERANCE,
            Target::Within { tolerance, .. } => tolerance,
        }
    }
}

/// `e^{iπ·global_phase_pi} |GHZ^{π·ghz_phase_pi}>`, compared including global phase.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedState {
    pub ghz_phase_pi: f64,
    #[serde(default)]
    pub global_phase_pi: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Expectations {
    pub phase_pi: Option<Target>,
    pub visibility: Option<Target>,
    pub fidelity: Option<Target>,
    pub witness: Option<bool>,
    pub p_hhhh: Option<Target>,
    pub p_vvvv: Option<Target>,
    pub occupied: Option<Vec<usize>>,
    pub energy: Option<Target>,
    pub overlap: Option<[f64; 2]>,
    pub expectations: BTreeMap<String, Target>,
    pub state: Option<ExpectedState>,
    pub source_success_probability: Option<Target>,
    pub source_fidelity: Option<Target>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub lattice: LatticeDescriptor,
    #[serde(default)]
    pub backend: Backend,
    #[serde(default)]
    pub initial: InitialState,
    #[serde(default)]
    pub operations: Vec<Operation>,
    #[serde(default)]
    pub measurements: Measurements,
    #[serde(default)]
    pub noise: Option<NoiseSpec>,
    #[serde(default)]
    pub sampling: Option<Sampling>,
    #[serde(default)]
    pub expect: Option<Expectations>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario =
            serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        if sc.schema != SCENARIO_SCHEMA {
            return Err(Error::Scenario(format!(
                "unsupported schema {:?}, expected {SCENARIO_SCHEMA:?}",
                sc.schema
            )));
        }
        Ok(sc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
