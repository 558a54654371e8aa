//! Weighted least-squares fit of the even Fourier components up to order 4.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One measured point of `<c_xy(γ)>`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub gamma: f64,
    pub value: f64,
    pub sigma: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitErrors {
    pub a0: f64,
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub visibility: f64,
    pub phase: f64,
}

/// `a0 + a1 cos 2γ + b1 sin 2γ + a2 cos 4γ + b2 sin 4γ`, with
/// `a2 = V cos φ`, `b2 = -V sin φ`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a0: f64,
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub visibility: f64,
    /// Radians, in (-π, π].
    pub phase: f64,
    /// `phase / π`.
    pub phase_pi: f64,
    pub stderr: FitErrors,
    pub chi2: f64,
    pub dof: usize,
}

impl FitResult {
    pub fn evaluate(&self, gamma: f64) -> f64 {
        self.a0
            + self.a1 * (2.0 * gamma).cos()
            + self.b1 * (2.0 * gamma).sin()
            + self.a2 * (4.0 * gamma).cos()
            + self.b2 * (4.0 * gamma).sin()
    }
}

/// Maps an angle into (-π, π].
pub fn wrap_phase(phi: f64) -> f64 {
    let mut w = phi.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    if w == 0.0 {
        0.0
    } else {
        w
    }
}

fn basis_row(g: f64) -> [f64; 5] {
    [
        1.0,
        (2.0 * g).cos(),
        (2.0 * g).sin(),
        (4.0 * g).cos(),
        (4.0 * g).sin(),
    ]
}

pub fn fourier_fit(points: &[CurvePoint]) -> Result<FitResult> {
    for p in points {
        if !(p.sigma > 0.0 && p.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma {} at gamma {} must be positive",
                p.sigma, p.gamma
            )));
        }
        if !p.gamma.is_finite() || !p.value.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite point at gamma {}",
                p.gamma
            )));
        }
    }
    let mut distinct: Vec<f64> = points.iter().map(|p| p.gamma.rem_euclid(PI)).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    if distinct.len() > 1 && (PI - distinct[distinct.len() - 1] + distinct[0]) < 1e-9 {
        distinct.pop();
    }
    if distinct.len() < 5 {
        return Err(Error::RankDeficient(format!(
            "{} distinct settings, need at least 5",
            distinct.len()
        )));
    }

    let m = points.len();
    let a = DMatrix::from_fn(m, 5, |r, c| basis_row(points[r].gamma)[c] / points[r].sigma);
    let y = DVector::from_fn(m, |r, _| points[r].value / points[r].sigma);
    let sv = a.singular_values();
    let smax = sv.max();
    if sv.min() <= 1e-9 * smax {
        return Err(Error::RankDeficient(
            "settings do not resolve the 4γ harmonic".into(),
        ));
    }
    let normal = a.transpose() * &a;
    let cov = normal
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::RankDeficient("singular normal equations".into()))?;
    let beta = &cov * (a.transpose() * &y);
    let resid = &a * &beta - &y;
    let chi2 = resid.norm_squared();

    let (a2, b2) = (beta[3], beta[4]);
    let visibility = a2.hypot(b2);
    let phase = wrap_phase((-b2).atan2(a2));
    let (v2a, v2b, cab) = (cov[(3, 3)], cov[(4, 4)], cov[(3, 4)]);
    let (sig_v, sig_phi) = if visibility > 0.0 {
        let vv = (a2 * a2 * v2a + b2 * b2 * v2b + 2.0 * a2 * b2 * cab) / (visibility * visibility);
        let pp = (b2 * b2 * v2a + a2 * a2 * v2b - 2.0 * a2 * b2 * cab) / visibility.powi(4);
        (vv.max(0.0).sqrt(), pp.max(0.0).sqrt())
    } else {
        (v2a.max(v2b).sqrt(), PI)
    };
    Ok(FitResult {
        a0: beta[0],
        a1: beta[1],
        b1: beta[2],
        a2,
        b2,
        visibility,
        phase,
        phase_pi: phase / PI,
        stderr: FitErrors {
            a0: cov[(0, 0)].sqrt(),
            a1: cov[(1, 1)].sqrt(),
            b1: cov[(2, 2)].sqrt(),
            a2: v2a.sqrt(),
            b2: v2b.sqrt(),
            visibility: sig_v,
            phase: sig_phi,
        },
        chi2,
        dof: m.saturating_sub(5),
    })
}

/// `F = (V + P_HHHH + P_VVVV) / 2`; the state is certified genuinely
/// four-partite entangled when `F > 1/2`.
pub fn fidelity_and_witness(visibility: f64, p_hhhh: f64, p_vvvv: f64) -> (f64, bool) {
    let f = (visibility + p_hhhh + p_vvvv) / 2.0;
    (f, f > 0.5)
}
