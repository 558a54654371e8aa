//! Noise, finite-count sampling and the estimation pipeline for the
//! four-photon GHZ measurements.

mod analysis;
mod fit;
mod noise;
mod sampling;

use std::f64::consts::PI;

pub use analysis::{analyze, error_bars, Analysis, ErrorBars};
pub use fit::{fidelity_and_witness, fourier_fit, wrap_phase, CurvePoint, FitErrors, FitResult};
pub use noise::{CalibrationTargets, NoiseModel};
pub use sampling::{
    derive_seed, estimate_correlation, frequencies, read_counts_csv, sample_counts,
    write_counts_csv, CountRecord, Estimate,
};

pub const DEFAULT_SETTINGS: usize = 16;
pub const DEFAULT_RESAMPLES: usize = 1000;

/// 16 equidistant analyser angles `kπ/16` over [0, π).
pub fn default_gammas() -> Vec<f64> {
    (0..DEFAULT_SETTINGS)
        .map(|k| k as f64 * PI / DEFAULT_SETTINGS as f64)
        .collect()
}
