//! Browser bindings for the toric-code simulator. Every export takes and
//! returns JSON strings so the page needs no generated glue beyond
//! wasm-bindgen's.

use serde::{Deserialize, Serialize};
use serde_json::json;
use toric_core::density::MeasurementSetting;
use toric_core::experiment::{analyze, default_gammas, derive_seed, sample_counts, NoiseModel};
use toric_core::scenario::{self, ExportFormat, RunOptions};
use toric_core::{
    AnyonKind, PauliString, PlaquetteKind, StabilizerState, StateVector, ToricLattice,
};
use wasm_bindgen::prelude::*;

fn msg<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

#[derive(Deserialize)]
struct StringOp {
    anyon: AnyonKind,
    from: usize,
    to: usize,
}

#[derive(Serialize)]
struct PlaquetteView {
    id: usize,
    kind: PlaquetteKind,
    face: Option<(i32, i32)>,
    qubits: Vec<usize>,
    occupied: bool,
}

/// Grid lattice after a list of anyon strings (`[{"anyon":"e","from":3,"to":13}, ...]`).
///
/// `loop_region` lists S plaquettes; when non-empty the result carries the
/// expectation of the X loop bounding them.
#[wasm_bindgen]
pub fn lattice_state(
    width: usize,
    height: usize,
    strings_json: &str,
    loop_region_json: &str,
) -> Result<String, String> {
    let lat = ToricLattice::grid(width, height).map_err(msg)?;
    let strings: Vec<StringOp> = serde_json::from_str(strings_json).map_err(msg)?;
    let region: Vec<usize> = serde_json::from_str(loop_region_json).map_err(msg)?;
    let mut st = StabilizerState::vacuum(&lat);
    let mut applied = PauliString::identity(lat.qubit_count());
    for s in &strings {
        let path = lat.string_between(s.anyon, s.from, s.to).map_err(msg)?;
        st.apply_pauli(&path.operator).map_err(msg)?;
        applied = applied.multiply(&path.operator).map_err(msg)?;
    }
    let ops = lat.plaquette_operators();
    let mut plaquettes = Vec::with_capacity(ops.len());
    let mut energy = 0i64;
    for (p, op) in lat.plaquettes().iter().zip(&ops) {
        let v = st.expectation(op).map_err(msg)?;
        energy -= i64::from(v);
        plaquettes.push(PlaquetteView {
            id: p.id,
            kind: p.kind,
            face: p.face,
            qubits: p.qubits.clone(),
            occupied: v == -1,
        });
    }
    let letters: Vec<String> = (0..lat.qubit_count())
        .map(|q| applied.get(q).map(|l| l.symbol().to_string()))
        .collect::<Result<_, _>>()
        .map_err(msg)?;
    let loop_value = if region.is_empty() {
        None
    } else {
        let op = lat.loop_around(&region).map_err(msg)?;
        Some(st.expectation(&op).map_err(msg)?)
    };
    let coords: Vec<(usize, usize)> = (0..lat.qubit_count()).map(|q| lat.coords(q)).collect();
    Ok(json!({
        "width": width,
        "height": height,
        "coords": coords,
        "plaquettes": plaquettes,
        "letters": letters,
        "energy": energy,
        "loop_value": loop_value,
    })
    .to_string())
}

/// Noise parameters fitted to the reference experiment.
#[wasm_bindgen]
pub fn calibrated_noise() -> String {
    serde_json::to_string(&NoiseModel::calibrated()).expect("plain struct")
}

/// Noisy GHZ^φ: the exact correlation curve and, if `events > 0`, a sampled
/// 16-setting scan with its fit.
#[wasm_bindgen]
pub fn correlation_demo(
    phase_pi: f64,
    white_noise: f64,
    dephasing: f64,
    tilt: f64,
    events: u32,
    seed: u32,
) -> Result<String, String> {
    let noise = NoiseModel::new(white_noise, dephasing, tilt).map_err(msg)?;
    let pure = StateVector::ghz(4, phase_pi * std::f64::consts::PI).map_err(msg)?;
    let rho = noise.apply(&pure.to_density().map_err(msg)?).map_err(msg)?;
    let fine: Vec<f64> = (0..=128)
        .map(|k| k as f64 * std::f64::consts::PI / 64.0)
        .collect();
    let exact: Vec<[f64; 2]> = fine
        .iter()
        .zip(rho.correlation_curve(&fine))
        .map(|(&g, v)| [g, v])
        .collect();
    let populations = rho.z_populations();
    let mut out = json!({ "exact": exact, "p_hhhh": populations[0], "p_vvvv": populations[15] });
    if events > 0 {
        let seed = u64::from(seed);
        let mut records = vec![sample_counts(
            &rho,
            MeasurementSetting::Z,
            events.into(),
            derive_seed(seed, 0),
        )
        .map_err(msg)?];
        for (i, g) in default_gammas().into_iter().enumerate() {
            let setting = MeasurementSetting::Xy { gamma: g };
            records.push(
                sample_counts(
                    &rho,
                    setting,
                    events.into(),
                    derive_seed(seed, i as u64 + 1),
                )
                .map_err(msg)?,
            );
        }
        let a = analyze(&records).map_err(msg)?;
        out["sampled"] = json!({
            "points": a.curve,
            "fit": a.fit,
            "fit_curve": fine.iter().map(|&g| [g, a.fit.evaluate(g)]).collect::<Vec<_>>(),
            "p_hhhh": a.p_hhhh,
            "p_vvvv": a.p_vvvv,
            "fidelity": a.fidelity,
            "witness": a.witness,
        });
    }
    Ok(out.to_string())
}

/// `[{"name": ..., "description": ...}, ...]`
#[wasm_bindgen]
pub fn builtin_list() -> String {
    serde_json::to_string(&scenario::list_builtins()).expect("plain struct")
}

/// Runs a built-in scenario and returns its JSON report.
#[wasm_bindgen]
pub fn run_builtin(name: &str) -> Result<String, String> {
    let sc = scenario::builtin(name).map_err(msg)?;
    let report = scenario::run(&sc, RunOptions::default()).map_err(msg)?;
    let file = scenario::export(&report, ExportFormat::Json).map_err(msg)?;
    Ok(file
        .into_iter()
        .next()
        .map(|f| f.contents)
        .unwrap_or_default())
}

/// Runs a scenario given as JSON text.
#[wasm_bindgen]
pub fn run_scenario(text: &str) -> Result<String, String> {
    let sc = scenario::Scenario::from_json(text).map_err(msg)?;
    let report = scenario::run(&sc, RunOptions::default()).map_err(msg)?;
    serde_json::to_string_pretty(&report).map_err(msg)
}
