//! Three-parameter noise model for the four-photon GHZ states.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::density::{DensityMatrix, DIM};
use crate::error::{Error, Result};

/// `ρ' = (1 - p_w)·T(D(ρ)) + p_w·1/16`.
///
/// `D` mixes ρ with its image under a sign flip of `|VVVV>`, which shrinks
/// every coherence with `|VVVV>` (in particular `ρ_HHHH,VVVV`) by
/// `1 - dephasing`. `T` is the renormalized filter
/// `K = diag(√(1+tilt), 1, …, 1, √(1-tilt))` that unbalances the two main
/// populations. All three steps are completely positive, so ρ' is a valid
/// density operator whenever ρ is.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub white_noise: f64,
    pub dephasing: f64,
    pub tilt: f64,
}

/// Visibility and main populations a calibrated model must reproduce.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTargets {
    pub visibility: f64,
    pub p_hhhh: f64,
    pub p_vvvv: f64,
}

#[derive(Deserialize)]
struct StoredCalibration {
    targets: CalibrationTargets,
    model: NoiseModel,
}

const STORED: &str = include_str!("../../data/calibrated_noise.json");

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::NONE
    }
}

impl NoiseModel {
    pub const NONE: NoiseModel = NoiseModel {
        white_noise: 0.0,
        dephasing: 0.0,
        tilt: 0.0,
    };

    pub fn new(white_noise: f64, dephasing: f64, tilt: f64) -> Result<Self> {
        let nm = NoiseModel {
            white_noise,
            dephasing,
            tilt,
        };
        nm.validate()?;
        Ok(nm)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.white_noise) {
            return Err(Error::InvalidParameter(format!(
                "white_noise {} outside [0, 1]",
                self.white_noise
            )));
        }
        if !unit.contains(&self.dephasing) {
            return Err(Error::InvalidParameter(format!(
                "dephasing {} outside [0, 1]",
                self.dephasing
            )));
        }
        if !(-1.0..=1.0).contains(&self.tilt) {
            return Err(Error::InvalidParameter(format!(
                "tilt {} outside [-1, 1]",
                self.tilt
            )));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        *self == NoiseModel::NONE
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.validate()?;
        let last = DIM - 1;
        let mut out = rho.clone();
        let m = out.matrix_mut();
        let shrink = 1.0 - self.dephasing;
        for i in 0..last {
            m[(i, last)] *= shrink;
            m[(last, i)] *= shrink;
        }
        let k = [(1.0 + self.tilt).sqrt(), (1.0 - self.tilt).sqrt()];
        for i in 0..DIM {
            for j in 0..DIM {
                let ki = if i == 0 {
                    k[0]
                } else if i == last {
                    k[1]
                } else {
                    1.0
                };
                let kj = if j == 0 {
                    k[0]
                } else if j == last {
                    k[1]
                } else {
                    1.0
                };
                m[(i, j)] *= ki * kj;
            }
        }
        let tr = m.trace().re;
        if tr <= 0.0 {
            return Err(Error::ZeroProjection);
        }
        *m /= C64::new(tr, 0.0);
        Ok(out.mix(&DensityMatrix::uniform(), self.white_noise))
    }

    /// Solves for the parameters that map `|GHZ^0>` onto the targets.
    ///
    /// For this model the three targets determine the three parameters
    /// uniquely, so the least-squares optimum has zero residual:
    /// `P_H + P_V = (1 - p_w) + p_w/8`, `P_H - P_V = (1 - p_w)·tilt` and
    /// `V = (1 - p_w)(1 - dephasing)√(1 - tilt²)`.
    pub fn calibrate(targets: CalibrationTargets) -> Result<Self> {
        let CalibrationTargets {
            visibility,
            p_hhhh,
            p_vvvv,
        } = targets;
        let white_noise = (1.0 - (p_hhhh + p_vvvv)) / (1.0 - 2.0 / DIM as f64);
        let kept = 1.0 - white_noise;
        if kept <= 0.0 {
            return Err(Error::InvalidParameter(
                "targets leave no coherent population".into(),
            ));
        }
        let tilt = (p_hhhh - p_vvvv) / kept;
        let dephasing = 1.0 - visibility / (kept * (1.0 - tilt * tilt).sqrt());
        NoiseModel::new(white_noise, dephasing, tilt)
    }

    /// The shipped calibration against the reported vacuum-state values.
    pub fn calibrated() -> Self {
        Self::stored().1
    }

    pub fn calibration_targets() -> CalibrationTargets {
        Self::stored().0
    }

    fn stored() -> (CalibrationTargets, NoiseModel) {
        let s: StoredCalibration =
            serde_json::from_str(STORED).expect("embedded calibration is valid JSON");
        (s.targets, s.model)
    }
}
