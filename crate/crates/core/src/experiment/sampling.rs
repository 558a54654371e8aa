//! Finite-count detection records and the parity estimator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::density::{parity_sign, DensityMatrix, MeasurementSetting, DIM};
use crate::error::{Error, Result};

/// Fourfold-coincidence counts for one measurement setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub setting: MeasurementSetting,
    pub counts: [u64; DIM],
}

impl CountRecord {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

/// Independent stream for item `index` derived from a base seed (SplitMix64).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Multinomial draw via sequential conditional binomials.
pub(crate) fn multinomial(probs: &[f64], n: u64, rng: &mut ChaCha8Rng) -> [u64; DIM] {
    let mut counts = [0u64; DIM];
    let mut remaining = n;
    let mut mass: f64 = probs.iter().sum();
    for (k, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k == probs.len() - 1 {
            counts[k] = remaining;
            break;
        }
        let q = if mass > 0.0 {
            (p / mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let draw = Binomial::new(remaining, q)
            .expect("probability in [0, 1]")
            .sample(rng);
        counts[k] = draw;
        remaining -= draw;
        mass -= p;
    }
    counts
}

pub fn sample_counts(
    rho: &DensityMatrix,
    setting: MeasurementSetting,
    n_events: u64,
    seed: u64,
) -> Result<CountRecord> {
    if n_events == 0 {
        return Err(Error::InvalidParameter("n_events must be positive".into()));
    }
    if let MeasurementSetting::Xy { gamma } = setting {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "measurement angle {gamma} is not finite"
            )));
        }
    }
    let probs = rho.outcome_probabilities(setting);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(CountRecord {
        setting,
        counts: multinomial(&probs, n_events, &mut rng),
    })
}

/// Mean of the product of the four ±1 outcomes, with binomial standard error.
pub fn estimate_correlation(rec: &CountRecord) -> Result<Estimate> {
    let n = rec.total();
    if n == 0 {
        return Err(Error::EmptyRecord);
    }
    let nf = n as f64;
    let value = rec
        .counts
        .iter()
        .enumerate()
        .map(|(k, &c)| parity_sign(k) * c as f64)
        .sum::<f64>()
        / nf;
    Ok(Estimate {
        value,
        stderr: ((1.0 - value * value).max(0.0) / nf).sqrt(),
    })
}

/// Per-outcome relative frequencies.
pub fn frequencies(rec: &CountRecord) -> Result<Vec<f64>> {
    let n = rec.total();
    if n == 0 {
        return Err(Error::EmptyRecord);
    }
    Ok(rec.counts.iter().map(|&c| c as f64 / n as f64).collect())
}

/// CSV with columns `gamma,outcome_index,count`; Z-basis rows use `z`.
pub fn write_counts_csv(records: &[CountRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["gamma", "outcome_index", "count"])?;
    for rec in records {
        let gamma = match rec.setting {
            MeasurementSetting::Z => "z".to_string(),
            MeasurementSetting::Xy { gamma } => format!("{gamma:?}"),
        };
        for (k, c) in rec.counts.iter().enumerate() {
            w.write_record([gamma.as_str(), &k.to_string(), &c.to_string()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn read_counts_csv(text: &str) -> Result<Vec<CountRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut records: Vec<CountRecord> = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let bad = || Error::InvalidParameter(format!("malformed count row {row:?}"));
        let setting = match row.get(0).ok_or_else(bad)? {
            "z" => MeasurementSetting::Z,
            g => MeasurementSetting::Xy {
                gamma: g.parse().map_err(|_| bad())?,
            },
        };
        let k: usize = row.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let c: u64 = row.get(2).ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if k >= DIM {
            return Err(bad());
        }
        match records.last_mut() {
            Some(last) if last.setting == setting => last.counts[k] += c,
            _ => {
                let mut counts = [0; DIM];
                counts[k] = c;
                records.push(CountRecord { setting, counts });
            }
        }
    }
    Ok(records)
}
