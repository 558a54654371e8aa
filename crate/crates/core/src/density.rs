//! Four-qubit density operators and the GHZ analysis observables.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::StateVector;

pub const QUBITS: usize = 4;
pub const DIM: usize = 1 << QUBITS;

/// Product measurement applied identically to all four qubits.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum MeasurementSetting {
    /// σ^z on every qubit; outcome bit 0 = H (+1), 1 = V (−1).
    Z,
    /// `cos γ σ^y + sin γ σ^x` on every qubit; outcome bit 0 is the +1 eigenvector.
    Xy { gamma: f64 },
}

impl MeasurementSetting {
    fn site_basis(self) -> [[C64; 2]; 2] {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            MeasurementSetting::Z => [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            ],
            MeasurementSetting::Xy { gamma } => {
                // <1|σ(γ)|0> = sin γ + i cos γ
                let e = C64::new(gamma.sin(), gamma.cos());
                [[C64::new(r, 0.0), C64::new(r, 0.0)], [e * r, -e * r]]
            }
        }
    }
}

/// Observable `σ(γ) = cos γ σ^y + sin γ σ^x` as a 2x2 matrix.
pub fn xy_observable(gamma: f64) -> [[C64; 2]; 2] {
    let e = C64::new(gamma.sin(), gamma.cos());
    [[C64::new(0.0, 0.0), e.conj()], [e, C64::new(0.0, 0.0)]]
}

/// `m ⊗ m ⊗ m ⊗ m` with qubit 0 as the least significant index bit.
fn kron4(m: &[[C64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_fn(DIM, DIM, |r, c| {
        (0..QUBITS).map(|q| m[(r >> q) & 1][(c >> q) & 1]).product()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    rho: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn from_pure(st: &StateVector) -> Result<Self> {
        if st.n_qubits() != QUBITS {
            return Err(Error::SizeMismatch {
                expected: QUBITS,
                found: st.n_qubits(),
            });
        }
        let a = st.amplitudes();
        Ok(DensityMatrix {
            rho: DMatrix::from_fn(DIM, DIM, |r, c| a[r] * a[c].conj()),
        })
    }

    pub fn uniform() -> Self {
        DensityMatrix {
            rho: DMatrix::identity(DIM, DIM) / C64::new(DIM as f64, 0.0),
        }
    }

    /// Checks shape, Hermiticity and unit trace.
    pub fn from_matrix(rho: DMatrix<C64>) -> Result<Self> {
        if rho.shape() != (DIM, DIM) {
            return Err(Error::InvalidParameter(format!(
                "density matrix must be {DIM}x{DIM}"
            )));
        }
        let herm = (&rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > 1e-10 {
            return Err(Error::InvalidParameter(
                "density matrix is not Hermitian".into(),
            ));
        }
        let dm = DensityMatrix { rho };
        if (dm.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "trace {} is not 1",
                dm.trace()
            )));
        }
        Ok(dm)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.rho
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// `ρ_{HHHH,VVVV} = <HHHH|ρ|VVVV>`.
    pub fn ghz_coherence(&self) -> C64 {
        self.rho[(0, DIM - 1)]
    }

    /// Outcome probabilities in the σ^z basis, little-endian (H = 0, V = 1).
    pub fn z_populations(&self) -> Vec<f64> {
        (0..DIM).map(|i| self.rho[(i, i)].re).collect()
    }

    /// `<c_xy(γ)>` for each angle.
    pub fn correlation_curve(&self, gammas: &[f64]) -> Vec<f64> {
        gammas
            .iter()
            .map(|&g| {
                let m = kron4(&xy_observable(g));
                (&self.rho * m).trace().re
            })
            .collect()
    }

    /// `<c_z>`: expectation of `σ^z ⊗ σ^z ⊗ σ^z ⊗ σ^z`.
    pub fn z_correlation(&self) -> f64 {
        self.z_populations()
            .iter()
            .enumerate()
            .map(|(k, p)| parity_sign(k) * p)
            .sum()
    }

    /// Probability of each of the 16 outcomes of a product measurement.
    pub fn outcome_probabilities(&self, setting: MeasurementSetting) -> Vec<f64> {
        let w = kron4(&setting.site_basis());
        let rotated = w.adjoint() * &self.rho * w;
        (0..DIM).map(|i| rotated[(i, i)].re.max(0.0)).collect()
    }

    /// `<ψ|ρ|ψ>`.
    pub fn fidelity(&self, st: &StateVector) -> Result<f64> {
        if st.n_qubits() != QUBITS {
            return Err(Error::SizeMismatch {
                expected: QUBITS,
                found: st.n_qubits(),
            });
        }
        let v = DMatrix::from_column_slice(DIM, 1, st.amplitudes());
        Ok((v.adjoint() * &self.rho * v)[(0, 0)].re)
    }

    /// Convex combination `(1 - w) self + w other`.
    pub fn mix(&self, other: &Self, w: f64) -> Self {
        DensityMatrix {
            rho: &self.rho * C64::new(1.0 - w, 0.0) + &other.rho * C64::new(w, 0.0),
        }
    }
}

/// `(-1)^{popcount(k)}`: product of the four ±1 outcomes.
pub fn parity_sign(k: usize) -> f64 {
    if k.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn ghz_curves_follow_cos_four_gamma() {
        for phi in [0.0, PI, 0.3, -1.2] {
            let rho = StateVector::ghz(4, phi).unwrap().to_density().unwrap();
            let gammas: Vec<f64> = (0..40).map(|k| k as f64 * PI / 40.0).collect();
            for (g, v) in gammas.iter().zip(rho.correlation_curve(&gammas)) {
                assert!((v - (4.0 * g + phi).cos()).abs() < 1e-10);
            }
        }
        let ghz0 = StateVector::ghz(4, 0.0).unwrap().to_density().unwrap();
        assert!((ghz0.correlation_curve(&[0.0])[0] - 1.0).abs() < 1e-12);
        assert!(ghz0.correlation_curve(&[PI / 8.0])[0].abs() < 1e-12);
        let ghz_pi = StateVector::ghz(4, PI).unwrap().to_density().unwrap();
        assert!((ghz_pi.correlation_curve(&[0.0])[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn populations() {
        let rho = StateVector::ghz(4, 0.0).unwrap().to_density().unwrap();
        let p = rho.z_populations();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[15] - 0.5).abs() < 1e-15);
        assert!(p[1..15].iter().all(|x| x.abs() < 1e-15));
        for q in DensityMatrix::uniform().z_populations() {
            assert!((q - 1.0 / 16.0).abs() < 1e-15);
        }
        assert!((rho.z_correlation() - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::uniform().z_correlation().abs() < 1e-15);
    }

    #[test]
    fn outcome_parity_matches_direct_expectation() {
        // mixed, tilted, dephased state
        let a = StateVector::ghz(4, 0.7).unwrap().to_density().unwrap();
        let rho = a.mix(&DensityMatrix::uniform(), 0.3);
        for g in [0.0, 0.2, 1.0, 2.5] {
            let probs = rho.outcome_probabilities(MeasurementSetting::Xy { gamma: g });
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let parity: f64 = probs
                .iter()
                .enumerate()
                .map(|(k, p)| parity_sign(k) * p)
                .sum();
            assert!((parity - rho.correlation_curve(&[g])[0]).abs() < 1e-12);
        }
        let zp = rho.outcome_probabilities(MeasurementSetting::Z);
        for (a, b) in zp.iter().zip(rho.z_populations()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn only_even_harmonics_up_to_four() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // random pure 4-qubit state
        let mut amps: Vec<C64> = (0..16)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        let rho = StateVector::from_amplitudes(amps)
            .unwrap()
            .to_density()
            .unwrap();
        // Fourier coefficients of the curve sampled on a fine grid over one period π
        let m = 64;
        let gammas: Vec<f64> = (0..m).map(|k| k as f64 * PI / m as f64).collect();
        let curve = rho.correlation_curve(&gammas);
        for harmonic in 1..16 {
            let (mut c, mut s) = (0.0, 0.0);
            for (g, v) in gammas.iter().zip(&curve) {
                c += v * (2.0 * harmonic as f64 * g).cos();
                s += v * (2.0 * harmonic as f64 * g).sin();
            }
            if harmonic > 2 {
                assert!(c.abs() < 1e-10 && s.abs() < 1e-10, "harmonic {harmonic}");
            }
        }
    }

    #[test]
    fn validation() {
        assert!(DensityMatrix::from_pure(&StateVector::zero(3).unwrap()).is_err());
        let bad = DMatrix::from_element(DIM, DIM, C64::new(0.0, 0.0));
        assert!(DensityMatrix::from_matrix(bad).is_err());
        assert!(DensityMatrix::from_matrix(DensityMatrix::uniform().matrix().clone()).is_ok());
    }
}
