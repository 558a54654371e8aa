use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::report::*;
use super::{Backend, Expectations, InitialState, Operation, Scenario, Target, REPORT_SCHEMA};
use crate::density::{parity_sign, DensityMatrix, MeasurementSetting, DIM, QUBITS};
use crate::error::{Error, Result};
use crate::experiment::{
    analyze, default_gammas, derive_seed, error_bars, estimate_correlation, fidelity_and_witness,
    fourier_fit, frequencies, sample_counts, wrap_phase, CurvePoint, NoiseModel,
};
use crate::lattice::ToricLattice;
use crate::optics::{ghz_chain, postselect_one_per_mode, spdc_second_order};
use crate::pauli::{Pauli, PauliString};
use crate::stabilizer::{Clifford1, StabilizerState};
use crate::statevector::StateVector;

/// Command-line style overrides applied on top of the scenario file.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub backend: Option<Backend>,
    pub seed: Option<u64>,
}

enum Step {
    Pauli(PauliString),
    Clifford(Clifford1, usize),
}

fn resolve(lat: &ToricLattice, ops: &[Operation]) -> Result<Vec<Step>> {
    let n = lat.qubit_count();
    ops.iter()
        .map(|op| {
            Ok(match op {
                Operation::Pauli { pauli, qubit } => Step::Pauli(PauliString::single(
                    n,
                    lat.qubit_from_label(*qubit)?,
                    *pauli,
                )?),
                Operation::PauliString { string } => Step::Pauli(lat.parse_pauli(string)?),
                Operation::Clifford { gate, qubit } => {
                    Step::Clifford(*gate, lat.qubit_from_label(*qubit)?)
                }
                Operation::Loop { plaquettes } => Step::Pauli(lat.loop_around(plaquettes)?),
                Operation::String { anyon, from, to } => {
                    Step::Pauli(lat.string_between(*anyon, *from, *to)?.operator)
                }
            })
        })
        .collect()
}

struct Engines {
    stab: Option<StabilizerState>,
    sv: Option<StateVector>,
    /// Largest stabilizer/statevector disagreement seen so far.
    disagreement: f64,
}

impl Engines {
    fn apply(&mut self, step: &Step) -> Result<()> {
        match step {
            Step::Pauli(p) => {
                if let Some(s) = &mut self.stab {
                    s.apply_pauli(p)?;
                }
                if let Some(v) = &mut self.sv {
                    v.apply_pauli_string(p)?;
                }
            }
            Step::Clifford(g, q) => {
                if let Some(s) = &mut self.stab {
                    s.apply_clifford1(*g, *q)?;
                }
                if let Some(v) = &mut self.sv {
                    v.apply_clifford1(*g, *q)?;
                }
            }
        }
        Ok(())
    }

    fn expectation(&mut self, p: &PauliString) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.render()));
        }
        let s = self
            .stab
            .as_ref()
            .map(|s| s.expectation(p))
            .transpose()?
            .map(f64::from);
        let v = self.sv.as_ref().map(|v| v.expectation(p)).transpose()?;
        match (s, v) {
            (Some(a), Some(b)) => {
                self.disagreement = self.disagreement.max((a - b).abs());
                Ok(b)
            }
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => unreachable!("at least one engine runs"),
        }
    }

    fn statevector(&self, what: &str) -> Result<&StateVector> {
        self.sv.as_ref().ok_or_else(|| {
            Error::Capability(format!(
                "{what} needs the statevector backend (global phases / dense state)"
            ))
        })
    }
}

/// Expectations of the 16 products `⊗_q P_q`, `P_q ∈ {A, B}`, indexed by the
/// mask of qubits carrying `B`.
fn product_table(stab: &StabilizerState, a: Pauli, b: Pauli) -> Result<[f64; DIM]> {
    let mut out = [0.0; DIM];
    for (mask, slot) in out.iter_mut().enumerate() {
        let mut p = PauliString::identity(QUBITS);
        for q in 0..QUBITS {
            p.set(q, if mask >> q & 1 == 1 { b } else { a })?;
        }
        *slot = f64::from(stab.expectation(&p)?);
    }
    Ok(out)
}

/// Noiseless curve from a stabilizer state: `σ(γ) = cos γ Y + sin γ X` expanded
/// over all four sites.
fn stabilizer_curve(stab: &StabilizerState, gammas: &[f64]) -> Result<Vec<f64>> {
    let table = product_table(stab, Pauli::X, Pauli::Y)?;
    Ok(gammas
        .iter()
        .map(|g| {
            table
                .iter()
                .enumerate()
                .map(|(mask, e)| {
                    let ys = mask.count_ones() as i32;
                    g.cos().powi(ys) * g.sin().powi(QUBITS as i32 - ys) * e
                })
                .sum()
        })
        .collect())
}

fn stabilizer_populations(stab: &StabilizerState) -> Result<Vec<f64>> {
    let table = product_table(stab, Pauli::I, Pauli::Z)?;
    Ok((0..DIM)
        .map(|k| {
            table
                .iter()
                .enumerate()
                .map(|(s, e)| parity_sign(k & s) * e)
                .sum::<f64>()
                / DIM as f64
        })
        .collect())
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn check(name: &str, expected: String, actual: String, passed: bool) -> Check {
    Check {
        name: name.to_string(),
        expected,
        actual,
        passed,
    }
}

fn target_check(name: &str, target: Target, actual: Option<f64>, needs: &str) -> Result<Check> {
    let actual =
        actual.ok_or_else(|| Error::Scenario(format!("expect.{name} requires {needs}")))?;
    let passed = (actual - target.value()).abs() <= target.tolerance();
    Ok(check(
        name,
        format!("{} ± {:e}", target.value(), target.tolerance()),
        format!("{actual}"),
        passed,
    ))
}

fn ghz_target(phase_pi: f64, global_pi: f64) -> Result<StateVector> {
    let st = StateVector::ghz(QUBITS, phase_pi * PI)?;
    Ok(st.scaled(C64::from_polar(1.0, global_pi * PI)))
}

pub fn run(scenario: &Scenario, opts: RunOptions) -> Result<Report> {
    let backend = opts.backend.unwrap_or(scenario.backend);
    let lat = ToricLattice::from_descriptor(scenario.lattice)?;
    let n = lat.qubit_count();
    let meas = &scenario.measurements;
    let four = n == QUBITS;
    let noise = scenario.noise.as_ref().map(|s| s.resolve()).transpose()?;
    let noisy = noise.is_some_and(|m| !m.is_noiseless());
    let mut sampling = scenario.sampling.clone();
    if let (Some(s), Some(seed)) = (&mut sampling, opts.seed) {
        s.seed = seed;
    }
    let wants_density = meas.correlation_curve.is_some() || meas.z_populations;
    if wants_density && !four {
        return Err(Error::Scenario(
            "correlation curves and populations need a four-qubit lattice".into(),
        ));
    }
    if (noise.is_some() || sampling.is_some()) && !wants_density {
        return Err(Error::Scenario(
            "noise and sampling apply to correlation_curve or z_populations".into(),
        ));
    }
    if wants_density && (noisy || sampling.is_some()) && !backend.uses_statevector() {
        return Err(Error::Capability(
            "noisy or sampled measurements need the statevector backend".into(),
        ));
    }
    if let Some(s) = &sampling {
        if s.events_per_setting == 0 {
            return Err(Error::Scenario(
                "sampling.events_per_setting must be positive".into(),
            ));
        }
    }

    // initial state
    let mut source = None;
    let mut engines = Engines {
        stab: None,
        sv: None,
        disagreement: 0.0,
    };
    let mut source_state = None;
    if let InitialState::Source { weighting } = scenario.initial {
        if !lat.is_minimal() {
            return Err(Error::Scenario(
                "the photonic source prepares the minimal lattice only".into(),
            ));
        }
        let out = spdc_second_order(weighting).apply_chain(&ghz_chain())?;
        let ps = postselect_one_per_mode(&out)?;
        let fidelity = ps
            .state
            .inner_product(&StateVector::ghz(QUBITS, 0.0)?)?
            .norm_sqr();
        source = Some(SourceReport {
            success_probability: ps.success_probability,
            fidelity,
        });
        source_state = Some(ps.state);
    }
    if backend.uses_statevector() {
        engines.sv = Some(match &source_state {
            Some(st) => st.clone(),
            None => StateVector::vacuum_dense(&lat)?,
        });
    }
    if backend.uses_stabilizer() {
        if let Some(src) = &source {
            if (src.fidelity - 1.0).abs() > 1e-9 {
                return Err(Error::Capability(
                    "source state is not a stabilizer state; use the statevector backend".into(),
                ));
            }
        }
        engines.stab = Some(StabilizerState::vacuum(&lat));
    }

    for step in resolve(&lat, &scenario.operations)? {
        engines.apply(&step)?;
    }

    let expect = scenario.expect.clone().unwrap_or_default();
    let mut report = Report {
        schema: REPORT_SCHEMA.to_string(),
        scenario: scenario.name.clone(),
        backend,
        lattice: scenario.lattice,
        qubits: n,
        noise,
        seed: sampling.as_ref().map(|s| s.seed),
        source,
        occupancy: None,
        plaquettes: Vec::new(),
        expectations: Vec::new(),
        energy: None,
        populations: None,
        curve: None,
        analysis: None,
        overlap: None,
        counts: None,
        checks: Vec::new(),
        passed: true,
    };

    // plaquettes and occupancy
    if meas.plaquettes || meas.occupancy || expect.occupied.is_some() {
        let mut occupied = Vec::new();
        let mut indefinite = Vec::new();
        for pl in lat.plaquettes() {
            let value = engines.expectation(&lat.plaquette_operator(pl.id)?)?;
            if value < -1.0 + 1e-9 {
                occupied.push(pl.id);
            } else if value.abs() < 1.0 - 1e-9 {
                indefinite.push(pl.id);
            }
            if meas.plaquettes {
                report.plaquettes.push(PlaquetteValue {
                    id: pl.id,
                    kind: pl.kind,
                    value,
                });
            }
        }
        if meas.occupancy || expect.occupied.is_some() {
            report.occupancy = Some(OccupancyReport {
                occupied,
                indefinite,
            });
        }
    }

    let mut operators: Vec<String> = meas.expectations.clone();
    operators.extend(
        expect
            .expectations
            .keys()
            .filter(|k| !meas.expectations.contains(k))
            .cloned(),
    );
    for text in operators {
        let p = lat.parse_pauli(&text)?;
        let value = engines.expectation(&p)?;
        report.expectations.push(OperatorValue {
            operator: text,
            value,
        });
    }

    if meas.energy || expect.energy.is_some() {
        report.energy = Some(engines.statevector("energy")?.energy(&lat)?);
    }

    if let Some(braid) = &meas.braiding {
        let ini = engines.statevector("the braiding overlap")?.clone();
        let mut fin = ini.clone();
        for step in resolve(&lat, &braid.operations)? {
            match step {
                Step::Pauli(p) => fin.apply_pauli_string(&p)?,
                Step::Clifford(g, q) => fin.apply_clifford1(g, q)?,
            }
        }
        let ov = ini.inner_product(&fin)?;
        report.overlap = Some(Overlap {
            re: ov.re,
            im: ov.im,
        });
    }

    if wants_density {
        measure_ghz(
            &mut report,
            &mut engines,
            scenario,
            sampling.as_ref(),
            noise.unwrap_or(NoiseModel::NONE),
        )?;
    }

    if backend == Backend::Both {
        report.checks.push(check(
            "backend_agreement",
            "stabilizer == statevector".into(),
            format!("max deviation {:e}", engines.disagreement),
            engines.disagreement <= 1e-9,
        ));
    }
    expectation_checks(&mut report, &expect, &engines)?;
    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(report)
}

fn measure_ghz(
    report: &mut Report,
    engines: &mut Engines,
    scenario: &Scenario,
    sampling: Option<&super::Sampling>,
    noise: NoiseModel,
) -> Result<()> {
    let meas = &scenario.measurements;
    let gammas = meas
        .correlation_curve
        .as_ref()
        .map(|c| c.gammas.clone().unwrap_or_else(default_gammas));
    let rho: Option<DensityMatrix> = match &engines.sv {
        Some(sv) => Some(noise.apply(&sv.to_density()?)?),
        None => None,
    };

    // noiseless stabilizer values, compared against the dense state when both run
    let (stab_curve, stab_pops) = match &engines.stab {
        Some(st) => (
            gammas
                .as_deref()
                .map(|g| stabilizer_curve(st, g))
                .transpose()?,
            Some(stabilizer_populations(st)?),
        ),
        None => (None, None),
    };
    if let (Some(sv), Some(pops)) = (&engines.sv, &stab_pops) {
        let pure = sv.to_density()?;
        engines.disagreement = engines
            .disagreement
            .max(max_diff(pops, &pure.z_populations()));
        if let (Some(g), Some(c)) = (&gammas, &stab_curve) {
            engines.disagreement = engines
                .disagreement
                .max(max_diff(c, &pure.correlation_curve(g)));
        }
    }

    if let Some(s) = sampling {
        let rho = rho.expect("sampling requires the statevector backend");
        let mut records = vec![sample_counts(
            &rho,
            MeasurementSetting::Z,
            s.events_per_setting,
            derive_seed(s.seed, 0),
        )?];
        for (i, &g) in gammas.iter().flatten().enumerate() {
            let setting = MeasurementSetting::Xy { gamma: g };
            records.push(sample_counts(
                &rho,
                setting,
                s.events_per_setting,
                derive_seed(s.seed, i as u64 + 1),
            )?);
        }
        report.populations = Some(frequencies(&records[0])?);
        if gammas.is_some() {
            let a = analyze(&records)?;
            let mut rows = Vec::new();
            for rec in &records[1..] {
                let est = estimate_correlation(rec)?;
                if let MeasurementSetting::Xy { gamma } = rec.setting {
                    rows.push(CurveRow {
                        gamma,
                        value: est.value,
                        stderr: est.stderr,
                    });
                }
            }
            report.curve = Some(rows);
            let bars = if s.resamples > 0 {
                Some(error_bars(
                    &records,
                    s.resamples,
                    derive_seed(s.seed, u64::MAX),
                )?)
            } else {
                None
            };
            report.analysis = Some(AnalysisReport {
                visibility: a.fit.visibility,
                phase: a.fit.phase,
                phase_pi: a.fit.phase_pi,
                p_hhhh: a.p_hhhh.expect("Z record present"),
                p_vvvv: a.p_vvvv.expect("Z record present"),
                c_z: a.c_z.expect("Z record present").value,
                fidelity: a.fidelity.expect("Z record present"),
                witness: a.witness.expect("Z record present"),
                fit: a.fit,
                error_bars: bars,
            });
        }
        report.counts = Some(records);
    } else {
        let pops = match &rho {
            Some(r) => r.z_populations(),
            None => stab_pops.expect("stabilizer engine present"),
        };
        if let Some(g) = &gammas {
            let values = match &rho {
                Some(r) => r.correlation_curve(g),
                None => stab_curve.expect("stabilizer engine present"),
            };
            let points: Vec<CurvePoint> = g
                .iter()
                .zip(&values)
                .map(|(&gamma, &value)| CurvePoint {
                    gamma,
                    value,
                    sigma: 1.0,
                })
                .collect();
            let fit = fourier_fit(&points)?;
            let (ph, pv) = (pops[0], pops[DIM - 1]);
            let (fidelity, witness) = fidelity_and_witness(fit.visibility, ph, pv);
            report.curve = Some(
                g.iter()
                    .zip(&values)
                    .map(|(&gamma, &value)| CurveRow {
                        gamma,
                        value,
                        stderr: 0.0,
                    })
                    .collect(),
            );
            report.analysis = Some(AnalysisReport {
                visibility: fit.visibility,
                phase: fit.phase,
                phase_pi: fit.phase_pi,
                p_hhhh: ph,
                p_vvvv: pv,
                c_z: pops
                    .iter()
                    .enumerate()
                    .map(|(k, p)| parity_sign(k) * p)
                    .sum(),
                fidelity,
                witness,
                fit,
                error_bars: None,
            });
        }
        report.populations = Some(pops);
    }
    if !meas.z_populations {
        report.populations = None;
    }
    Ok(())
}

fn expectation_checks(report: &mut Report, expect: &Expectations, engines: &Engines) -> Result<()> {
    let mut checks = Vec::new();
    let analysis = report.analysis.as_ref();
    if let Some(t) = expect.phase_pi {
        let actual = analysis.map(|a| a.phase_pi);
        let a = actual
            .ok_or_else(|| Error::Scenario("expect.phase_pi requires correlation_curve".into()))?;
        let dev = wrap_phase((a - t.value()) * PI).abs() / PI;
        checks.push(check(
            "phase_pi",
            format!("{} ± {:e}", t.value(), t.tolerance()),
            format!("{a}"),
            dev <= t.tolerance(),
        ));
    }
    let need_curve = "correlation_curve";
    if let Some(t) = expect.visibility {
        checks.push(target_check(
            "visibility",
            t,
            analysis.map(|a| a.visibility),
            need_curve,
        )?);
    }
    if let Some(t) = expect.fidelity {
        checks.push(target_check(
            "fidelity",
            t,
            analysis.map(|a| a.fidelity),
            need_curve,
        )?);
    }
    if let Some(t) = expect.p_hhhh {
        checks.push(target_check(
            "p_hhhh",
            t,
            analysis.map(|a| a.p_hhhh),
            need_curve,
        )?);
    }
    if let Some(t) = expect.p_vvvv {
        checks.push(target_check(
            "p_vvvv",
            t,
            analysis.map(|a| a.p_vvvv),
            need_curve,
        )?);
    }
    if let Some(w) = expect.witness {
        let a = analysis
            .ok_or_else(|| Error::Scenario("expect.witness requires correlation_curve".into()))?;
        checks.push(check(
            "witness",
            w.to_string(),
            a.witness.to_string(),
            a.witness == w,
        ));
    }
    if let Some(ids) = &expect.occupied {
        let occ = report
            .occupancy
            .as_ref()
            .expect("occupancy measured when expected");
        checks.push(check(
            "occupied",
            format!("{ids:?}"),
            format!("{:?}", occ.occupied),
            &occ.occupied == ids,
        ));
    }
    if let Some(t) = expect.energy {
        checks.push(target_check("energy", t, report.energy, "energy")?);
    }
    if let Some([re, im]) = expect.overlap {
        let ov = report.overlap.ok_or_else(|| {
            Error::Scenario("expect.overlap requires measurements.braiding".into())
        })?;
        let dev = (ov.re - re).hypot(ov.im - im);
        checks.push(check(
            "overlap",
            format!("{re}{im:+}i ± {:e}", super::DEFAULT_TOLERANCE),
            format!("{}{:+}i", ov.re, ov.im),
            dev <= super::DEFAULT_TOLERANCE,
        ));
    }
    for (op, t) in &expect.expectations {
        let actual = report
            .expectations
            .iter()
            .find(|v| &v.operator == op)
            .map(|v| v.value);
        checks.push(target_check(
            &format!("<{op}>"),
            *t,
            actual,
            "the operator",
        )?);
    }
    if let Some(st) = expect.state {
        let sv = engines.statevector("expect.state")?;
        if sv.n_qubits() != QUBITS {
            return Err(Error::Scenario(
                "expect.state compares against four-qubit GHZ states".into(),
            ));
        }
        let dist = sv.distance(&ghz_target(st.ghz_phase_pi, st.global_phase_pi)?)?;
        checks.push(check(
            "state",
            format!(
                "exp(i{}π)|GHZ^{}π> ± {:e}",
                st.global_phase_pi,
                st.ghz_phase_pi,
                super::DEFAULT_TOLERANCE
            ),
            format!("distance {dist:e}"),
            dist <= super::DEFAULT_TOLERANCE,
        ));
    }
    if let Some(t) = expect.source_success_probability {
        checks.push(target_check(
            "source_success_probability",
            t,
            report.source.map(|s| s.success_probability),
            "initial.source",
        )?);
    }
    if let Some(t) = expect.source_fidelity {
        checks.push(target_check(
            "source_fidelity",
            t,
            report.source.map(|s| s.fidelity),
            "initial.source",
        )?);
    }
    report.checks.extend(checks);
    Ok(())
}

/// Runs independent scenarios concurrently; reports come back in input order.
pub fn run_all(scenarios: &[Scenario], opts: RunOptions) -> Vec<Result<Report>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .iter()
            .map(|sc| scope.spawn(move || run(sc, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    })
}
