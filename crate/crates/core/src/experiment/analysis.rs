//! Full estimation pipeline over a batch of count records, plus bootstrap bars.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fit::{fidelity_and_witness, fourier_fit, wrap_phase, CurvePoint, FitResult};
use super::sampling::{
    derive_seed, estimate_correlation, frequencies, multinomial, CountRecord, Estimate,
};
use crate::density::{MeasurementSetting, DIM};
use crate::error::{Error, Result};

/// Estimates derived from one batch: a Z-basis record and the γ scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub curve: Vec<CurvePoint>,
    pub fit: FitResult,
    pub c_z: Option<Estimate>,
    pub p_hhhh: Option<f64>,
    pub p_vvvv: Option<f64>,
    pub fidelity: Option<f64>,
    pub witness: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBars {
    pub resamples: usize,
    pub visibility: f64,
    pub phase: f64,
    pub c_z: Option<f64>,
    pub p_hhhh: Option<f64>,
    pub p_vvvv: Option<f64>,
    pub fidelity: Option<f64>,
}

/// Point uncertainty used as the fit weight; floored so that a record with
/// all events in one parity class still carries finite weight.
fn point_sigma(value: f64, n: u64) -> f64 {
    let nf = n as f64;
    ((1.0 - value * value).max(1.0 / nf) / nf).sqrt()
}

pub fn analyze(records: &[CountRecord]) -> Result<Analysis> {
    if records.is_empty() {
        return Err(Error::EmptyRecord);
    }
    let mut curve = Vec::new();
    let mut z_rec: Option<&CountRecord> = None;
    for rec in records {
        match rec.setting {
            MeasurementSetting::Z => {
                if z_rec.is_some() {
                    return Err(Error::InvalidParameter(
                        "more than one Z-basis record".into(),
                    ));
                }
                z_rec = Some(rec);
            }
            MeasurementSetting::Xy { gamma } => {
                let est = estimate_correlation(rec)?;
                curve.push(CurvePoint {
                    gamma,
                    value: est.value,
                    sigma: point_sigma(est.value, rec.total()),
                });
            }
        }
    }
    let fit = fourier_fit(&curve)?;
    let mut out = Analysis {
        curve,
        fit,
        c_z: None,
        p_hhhh: None,
        p_vvvv: None,
        fidelity: None,
        witness: None,
    };
    if let Some(z) = z_rec {
        let freq = frequencies(z)?;
        let (ph, pv) = (freq[0], freq[DIM - 1]);
        let (f, w) = fidelity_and_witness(fit.visibility, ph, pv);
        out.c_z = Some(estimate_correlation(z)?);
        out.p_hhhh = Some(ph);
        out.p_vvvv = Some(pv);
        out.fidelity = Some(f);
        out.witness = Some(w);
    }
    Ok(out)
}

fn std_dev(xs: &[f64], center: f64) -> f64 {
    (xs.iter().map(|x| (x - center).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Nonparametric bootstrap: every record is resampled from its own empirical
/// distribution with the same total, and the whole pipeline is rerun.
/// Phase spread is measured as wrapped deviation from the point estimate.
pub fn error_bars(records: &[CountRecord], resamples: usize, seed: u64) -> Result<ErrorBars> {
    if resamples == 0 {
        return Err(Error::InvalidParameter("resamples must be positive".into()));
    }
    let point = analyze(records)?;
    let probs: Vec<Vec<f64>> = records.iter().map(frequencies).collect::<Result<_>>()?;
    let mut vis = Vec::with_capacity(resamples);
    let mut phase = Vec::with_capacity(resamples);
    let (mut cz, mut ph, mut pv, mut fid) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for r in 0..resamples {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, r as u64));
        let batch: Vec<CountRecord> = records
            .iter()
            .zip(&probs)
            .map(|(rec, p)| CountRecord {
                setting: rec.setting,
                counts: multinomial(p, rec.total(), &mut rng),
            })
            .collect();
        let a = analyze(&batch)?;
        vis.push(a.fit.visibility);
        phase.push(wrap_phase(a.fit.phase - point.fit.phase));
        if let (Some(c), Some(h), Some(v), Some(f)) = (a.c_z, a.p_hhhh, a.p_vvvv, a.fidelity) {
            cz.push(c.value);
            ph.push(h);
            pv.push(v);
            fid.push(f);
        }
    }
    let opt = |xs: &[f64]| {
        if xs.is_empty() {
            None
        } else {
            Some(std_dev(xs, mean(xs)))
        }
    };
    Ok(ErrorBars {
        resamples,
        visibility: std_dev(&vis, mean(&vis)),
        phase: std_dev(&phase, mean(&phase)),
        c_z: opt(&cz),
        p_hhhh: opt(&ph),
        p_vvvv: opt(&pv),
        fidelity: opt(&fid),
    })
}
