use serde::{Deserialize, Serialize};

use super::Backend;
use crate::experiment::{CountRecord, ErrorBars, FitResult, NoiseModel};
use crate::lattice::{LatticeDescriptor, PlaquetteKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorValue {
    pub operator: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaquetteValue {
    pub id: usize,
    pub kind: PlaquetteKind,
    pub value: f64,
}

/// Plaquettes with eigenvalue -1 hold an anyon; expectation 0 means the
/// state is a superposition of occupations there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupancyReport {
    pub occupied: Vec<usize>,
    pub indefinite: Vec<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub gamma: f64,
    pub value: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub visibility: f64,
    pub phase: f64,
    pub phase_pi: f64,
    pub p_hhhh: f64,
    pub p_vvvv: f64,
    pub c_z: f64,
    pub fidelity: f64,
    pub witness: bool,
    pub fit: FitResult,
    pub error_bars: Option<ErrorBars>,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    pub re: f64,
    pub im: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceReport {
    pub success_probability: f64,
    pub fidelity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub scenario: String,
    pub backend: Backend,
    pub lattice: LatticeDescriptor,
    pub qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occupancy: Option<OccupancyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub plaquettes: Vec<PlaquetteValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub expectations: Vec<OperatorValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub populations: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<CurveRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap: Option<Overlap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountRecord>>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
