//! Dense pure-state simulation, used as the exact oracle for global phases,
//! energies and GHZ correlation curves.

use num_complex::Complex64 as C64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::lattice::{PlaquetteKind, ToricLattice};
use crate::pauli::PauliString;
use crate::stabilizer::Clifford1;

pub const MAX_QUBITS: usize = 20;

pub type Gate2 = [[C64; 2]; 2];

const NORM_TOL: f64 = 1e-12;

pub fn gate_matrix(gate: Clifford1) -> Gate2 {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match gate {
        Clifford1::H => [[o * r, o * r], [o * r, -o * r]],
        Clifford1::S => [[o, z], [z, i]],
        Clifford1::SInv => [[o, z], [z, -i]],
        Clifford1::X => [[z, o], [o, z]],
        Clifford1::Y => [[z, -i], [i, z]],
        Clifford1::Z => [[o, z], [z, -o]],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        *amps
            .get_mut(index)
            .ok_or(Error::QubitOutOfRange { index, n })? = C64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Wraps raw amplitudes; they must already be normalized.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n || amps.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let st = StateVector { n, amps };
        let norm = st.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "state norm {norm} is not 1"
            )));
        }
        Ok(st)
    }

    /// `(|0...0> + e^{iφ}|1...1>)/√2`.
    pub fn ghz(n: usize, phi: f64) -> Result<Self> {
        let mut st = Self::zero(n)?;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        st.amps[0] = C64::new(r, 0.0);
        st.amps[(1 << n) - 1] = C64::from_polar(r, phi);
        Ok(st)
    }

    /// Literal product construction of the vacuum: `(1 + C_s)/√2` for every
    /// S plaquette applied to `|0...0>`.
    pub fn vacuum_dense(lat: &ToricLattice) -> Result<Self> {
        let mut st = Self::zero(lat.qubit_count())?;
        for p in lat.plaquettes_of(PlaquetteKind::S) {
            st.apply_plus_projector(&lat.plaquette_operator(p.id)?)?;
        }
        st.normalize()?;
        Ok(st)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm < 1e-300 {
            return Err(Error::ZeroProjection);
        }
        self.amps.iter_mut().for_each(|a| *a /= norm);
        Ok(())
    }

    pub fn scaled(&self, c: C64) -> Self {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            Err(Error::QubitOutOfRange {
                index: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n != self.n {
            Err(Error::SizeMismatch {
                expected: self.n,
                found: n,
            })
        } else {
            Ok(())
        }
    }

    /// Applies an arbitrary single-qubit unitary.
    pub fn apply_gate(&mut self, u: &Gate2, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let dev = unitarity_deviation(u);
        if dev > 1e-10 {
            return Err(Error::NotUnitary(dev));
        }
        let bit = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i | bit] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_clifford1(&mut self, gate: Clifford1, qubit: usize) -> Result<()> {
        self.apply_gate(&gate_matrix(gate), qubit)
    }

    /// `P|ψ>` including the `i^k` prefactor.
    pub fn apply_pauli_string(&mut self, p: &PauliString) -> Result<()> {
        self.amps = self.pauli_image(p)?;
        Ok(())
    }

    fn pauli_image(&self, p: &PauliString) -> Result<Vec<C64>> {
        self.check_size(p.n_qubits())?;
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        // i^(phase + |Y|) X^x Z^z
        let coef = C64::i().powu((p.phase_exp() as u32 + p.y_count()) % 4);
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (b & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ x] = coef * a * sign;
        }
        Ok(out)
    }

    /// `(1 + P)/√2 |ψ>` without renormalizing.
    pub fn apply_plus_projector(&mut self, p: &PauliString) -> Result<()> {
        let image = self.pauli_image(p)?;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        self.amps
            .iter_mut()
            .zip(image)
            .for_each(|(a, b)| *a = (*a + b) * r);
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner_product(&self, other: &Self) -> Result<C64> {
        self.check_size(other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `<ψ|P|ψ>` for a Hermitian Pauli string.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.render()));
        }
        let image = self.pauli_image(p)?;
        Ok(self
            .amps
            .iter()
            .zip(&image)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    /// `<ψ|H|ψ>` with `H = -Σ` plaquette operators.
    pub fn energy(&self, lat: &ToricLattice) -> Result<f64> {
        self.check_size(lat.qubit_count())?;
        lat.hamiltonian_terms()
            .iter()
            .map(|t| self.expectation(t).map(|e| -e))
            .sum()
    }

    /// Minimal distance to `other` over global phases.
    pub fn distance_up_to_phase(&self, other: &Self) -> Result<f64> {
        let ov = self.inner_product(other)?;
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.distance(&other.scaled(phase.conj()))
    }

    /// Phase-inclusive Euclidean distance.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_size(other.n)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(self)
    }

    pub fn correlation_curve(&self, gammas: &[f64]) -> Result<Vec<f64>> {
        Ok(self.to_density()?.correlation_curve(gammas))
    }

    pub fn z_populations(&self) -> Result<Vec<f64>> {
        Ok(self.to_density()?.z_populations())
    }
}

fn unitarity_deviation(u: &Gate2) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let entry: C64 = (0..2).map(|k| u[k][i].conj() * u[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((entry - want).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::stabilizer::StabilizerState;

    const R: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn random_state(n: usize, rng: &mut impl Rng) -> StateVector {
        let amps: Vec<C64> = (0..1 << n)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let mut st = StateVector { n, amps };
        st.normalize().unwrap();
        st
    }

    #[test]
    fn minimal_vacuum_is_ghz() {
        let st = StateVector::vacuum_dense(&ToricLattice::minimal()).unwrap();
        for (i, a) in st.amplitudes().iter().enumerate() {
            let want = if i == 0 || i == 15 { R } else { 0.0 };
            assert!((a - C64::new(want, 0.0)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn vacuum_energy_is_minus_term_count() {
        let min = ToricLattice::minimal();
        let st = StateVector::vacuum_dense(&min).unwrap();
        assert!((st.energy(&min).unwrap() + 5.0).abs() < 1e-12);
        let mut e = st.clone();
        e.apply_pauli_string(&min.parse_pauli("Z1").unwrap())
            .unwrap();
        assert!((e.energy(&min).unwrap() + 3.0).abs() < 1e-12);

        for (w, h) in [(2, 2), (3, 3), (3, 4)] {
            let lat = ToricLattice::grid(w, h).unwrap();
            let st = StateVector::vacuum_dense(&lat).unwrap();
            assert!(st.is_normalized());
            let terms = lat.hamiltonian_terms();
            for t in &terms {
                assert!((st.expectation(t).unwrap() - 1.0).abs() < 1e-12);
            }
            assert!((st.energy(&lat).unwrap() + terms.len() as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn energy_is_bounded_below() {
        let lat = ToricLattice::grid(3, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let floor = -(lat.hamiltonian_terms().len() as f64);
        for _ in 0..20 {
            assert!(random_state(9, &mut rng).energy(&lat).unwrap() >= floor - 1e-12);
        }
    }

    #[test]
    fn vacuum_projector_is_idempotent() {
        let lat = ToricLattice::grid(3, 3).unwrap();
        let st = StateVector::vacuum_dense(&lat).unwrap();
        for p in lat.plaquettes_of(PlaquetteKind::S) {
            let mut again = st.clone();
            again
                .apply_plus_projector(&lat.plaquette_operator(p.id).unwrap())
                .unwrap();
            assert!((again.norm() - std::f64::consts::SQRT_2).abs() < 1e-12);
            again.normalize().unwrap();
            assert!(again.distance(&st).unwrap() < 1e-12);
        }
    }

    #[test]
    fn braiding_sign_on_minimal_instance() {
        let lat = ToricLattice::minimal();
        let xi = StateVector::vacuum_dense(&lat).unwrap();
        let mut ini = xi.clone();
        ini.apply_pauli_string(&lat.parse_pauli("Z1").unwrap())
            .unwrap();
        let mut fin = ini.clone();
        fin.apply_pauli_string(&lat.plaquette_operator(0).unwrap())
            .unwrap();
        let ov = ini.inner_product(&fin).unwrap();
        assert!((ov - C64::new(-1.0, 0.0)).norm() < 1e-12);
        let mut cs_xi = xi.clone();
        cs_xi
            .apply_pauli_string(&lat.plaquette_operator(0).unwrap())
            .unwrap();
        assert!((xi.inner_product(&cs_xi).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn interference_gives_minus_i_ghz_pi() {
        let lat = ToricLattice::minimal();
        let mut st = StateVector::vacuum_dense(&lat).unwrap();
        st.apply_clifford1(Clifford1::SInv, 0).unwrap();
        st.apply_pauli_string(&lat.plaquette_operator(0).unwrap())
            .unwrap();
        st.apply_clifford1(Clifford1::S, 0).unwrap();
        let ghz_pi = StateVector::ghz(4, std::f64::consts::PI).unwrap();
        let ov = ghz_pi.inner_product(&st).unwrap();
        assert!((ov - C64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn gate_inverses_and_pauli_involution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let st = random_state(5, &mut rng);
        let mut t = st.clone();
        t.apply_clifford1(Clifford1::S, 2).unwrap();
        t.apply_clifford1(Clifford1::SInv, 2).unwrap();
        assert!(t.distance(&st).unwrap() < 1e-12);
        let z1 = PauliString::parse("Z1", 5).unwrap();
        t.apply_pauli_string(&z1).unwrap();
        t.apply_pauli_string(&z1).unwrap();
        assert!(t.distance(&st).unwrap() < 1e-12);
    }

    #[test]
    fn gate_errors() {
        let mut st = StateVector::zero(2).unwrap();
        let bad = [
            [C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ];
        assert!(matches!(st.apply_gate(&bad, 0), Err(Error::NotUnitary(_))));
        assert!(matches!(
            st.apply_clifford1(Clifford1::H, 2),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            StateVector::zero(21),
            Err(Error::TooManyQubits { .. })
        ));
        let other = StateVector::zero(3).unwrap();
        assert!(matches!(
            st.inner_product(&other),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            st.energy(&ToricLattice::minimal()),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn norm_preserved_over_many_random_gates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut st = random_state(6, &mut rng);
        for _ in 0..10_000 {
            let (theta, phi, lam): (f64, f64, f64) = (
                rng.random::<f64>() * 6.3,
                rng.random::<f64>() * 6.3,
                rng.random::<f64>() * 6.3,
            );
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let u = [
                [C64::new(c, 0.0), -C64::from_polar(s, lam)],
                [C64::from_polar(s, phi), C64::from_polar(c, phi + lam)],
            ];
            st.apply_gate(&u, rng.random_range(0..6)).unwrap();
        }
        assert!(st.is_normalized(), "norm {}", st.norm());
    }

    #[test]
    fn pauli_expectations_agree_with_stabilizer_engine() {
        let lat = ToricLattice::grid(3, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut sv = StateVector::vacuum_dense(&lat).unwrap();
        let mut tab = StabilizerState::vacuum(&lat);
        let gates = [
            Clifford1::H,
            Clifford1::S,
            Clifford1::SInv,
            Clifford1::X,
            Clifford1::Y,
            Clifford1::Z,
        ];
        for _ in 0..15 {
            let (g, q) = (gates[rng.random_range(0..6)], rng.random_range(0..9));
            sv.apply_clifford1(g, q).unwrap();
            tab.apply_clifford1(g, q).unwrap();
        }
        let letters = [
            crate::pauli::Pauli::X,
            crate::pauli::Pauli::Y,
            crate::pauli::Pauli::Z,
        ];
        for _ in 0..300 {
            let mut p = PauliString::identity(9);
            for _ in 0..rng.random_range(1..=4) {
                p.set(rng.random_range(0..9), letters[rng.random_range(0..3)])
                    .unwrap();
            }
            let dense = sv.expectation(&p).unwrap();
            let exact = tab.expectation(&p).unwrap() as f64;
            assert!((dense - exact).abs() < 1e-10, "{p}: {dense} vs {exact}");
        }
    }
}
