//! Sign-tracked stabilizer tableau.
//!
//! A state on n qubits is held as n independent, mutually commuting,
//! Hermitian generators. Signs carry everything the GHZ-phase observables
//! need; global phase is outside this model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ToricLattice;
use crate::pauli::{Pauli, PauliString};
use crate::symplectic::{self, Echelon};

/// Single-qubit Clifford gates supported by both engines.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clifford1 {
    H,
    S,
    #[serde(rename = "S_inv")]
    SInv,
    X,
    Y,
    Z,
}

impl Clifford1 {
    pub fn inverse(self) -> Self {
        match self {
            Clifford1::S => Clifford1::SInv,
            Clifford1::SInv => Clifford1::S,
            g => g,
        }
    }

    /// `U σ U†` for a single-site letter, as (sign flipped, new letter).
    pub fn conjugate(self, letter: Pauli) -> (bool, Pauli) {
        use Pauli::*;
        match (self, letter) {
            (_, I) => (false, I),
            (Clifford1::H, X) => (false, Z),
            (Clifford1::H, Y) => (true, Y),
            (Clifford1::H, Z) => (false, X),
            (Clifford1::S, X) => (false, Y),
            (Clifford1::S, Y) => (true, X),
            (Clifford1::S, Z) => (false, Z),
            (Clifford1::SInv, X) => (true, Y),
            (Clifford1::SInv, Y) => (false, X),
            (Clifford1::SInv, Z) => (false, Z),
            (Clifford1::X, X) => (false, X),
            (Clifford1::X, l) => (true, l),
            (Clifford1::Y, Y) => (false, Y),
            (Clifford1::Y, l) => (true, l),
            (Clifford1::Z, Z) => (false, Z),
            (Clifford1::Z, l) => (true, l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliString>,
}

impl StabilizerState {
    /// `|0...0>`, stabilized by every single-qubit Z.
    pub fn zero(n: usize) -> Self {
        let generators = (0..n)
            .map(|q| PauliString::single(n, q, Pauli::Z).expect("q < n"))
            .collect();
        StabilizerState { n, generators }
    }

    pub fn from_generators(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators.first().map(|g| g.n_qubits()).unwrap_or(0);
        let st = StabilizerState { n, generators };
        st.check_invariants()?;
        Ok(st)
    }

    /// The anyonic vacuum `∏_s (1 + C_s)/√2 |0...0>`.
    ///
    /// Generators are drawn from the plaquette operators (S first, then P, in
    /// id order) wherever they are independent; the projected `|0...0>` state
    /// fills in any remaining directions.
    pub fn vacuum(lat: &ToricLattice) -> Self {
        let n = lat.qubit_count();
        let mut projected = Self::zero(n);
        let s_ops: Vec<_> = lat
            .plaquettes_of(crate::lattice::PlaquetteKind::S)
            .map(|p| lat.plaquette_operator(p.id).expect("valid id"))
            .collect();
        for op in &s_ops {
            projected.project(op).expect("plaquette operators commute");
        }
        let mut basis = Echelon::new();
        let mut generators = Vec::with_capacity(n);
        let ordered = lat
            .plaquettes_of(crate::lattice::PlaquetteKind::S)
            .chain(lat.plaquettes_of(crate::lattice::PlaquetteKind::P))
            .map(|p| lat.plaquette_operator(p.id).expect("valid id"));
        for op in ordered.chain(projected.generators.iter().cloned()) {
            if generators.len() == n {
                break;
            }
            if basis.insert(&op) {
                generators.push(op);
            }
        }
        let st = StabilizerState { n, generators };
        debug_assert!(st.check_invariants().is_ok());
        st
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    fn check_size(&self, p: &PauliString) -> Result<()> {
        if p.n_qubits() != self.n {
            Err(Error::SizeMismatch {
                expected: self.n,
                found: p.n_qubits(),
            })
        } else {
            Ok(())
        }
    }

    /// Applies the Pauli operator `p`: generators anticommuting with it flip sign.
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.check_size(p)?;
        for g in &mut self.generators {
            if g.symplectic_product(p) {
                *g = g.negated();
            }
        }
        Ok(())
    }

    pub fn apply_clifford1(&mut self, gate: Clifford1, qubit: usize) -> Result<()> {
        if qubit >= self.n {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        for g in &mut self.generators {
            let (flip, letter) = gate.conjugate(g.get(qubit)?);
            g.set(qubit, letter)?;
            if flip {
                *g = g.negated();
            }
        }
        debug_assert!(self.check_invariants().is_ok());
        Ok(())
    }

    /// Post-selected projection onto the +1 eigenspace of `p` (renormalized).
    pub fn project(&mut self, p: &PauliString) -> Result<()> {
        self.check_size(p)?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.render()));
        }
        let anti: Vec<usize> = (0..self.generators.len())
            .filter(|&i| self.generators[i].symplectic_product(p))
            .collect();
        match anti.split_first() {
            None => match self.expectation(p)? {
                1 => Ok(()),
                _ => Err(Error::ZeroProjection),
            },
            Some((&pivot, rest)) => {
                let pivot_gen = self.generators[pivot].clone();
                for &i in rest {
                    self.generators[i] = self.generators[i].multiply(&pivot_gen)?;
                }
                self.generators[pivot] = p.clone();
                Ok(())
            }
        }
    }

    /// `+1`/`-1` when `±p` is in the stabilizer group, `0` otherwise.
    pub fn expectation(&self, p: &PauliString) -> Result<i8> {
        self.check_size(p)?;
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.render()));
        }
        if self.generators.iter().any(|g| g.symplectic_product(p)) {
            return Ok(0);
        }
        let mut basis = Echelon::new();
        for g in &self.generators {
            basis.insert(g);
        }
        let combo = basis.solve(p).ok_or_else(|| {
            Error::InvalidGenerators("commuting operator outside the group".into())
        })?;
        let mut prod = PauliString::identity(self.n);
        for i in combo {
            prod = prod.multiply(&self.generators[i])?;
        }
        debug_assert!(prod.same_letters(p));
        match (p.phase_exp() + 4 - prod.phase_exp()) % 4 {
            0 => Ok(1),
            2 => Ok(-1),
            _ => Err(Error::InvalidGenerators(
                "product of generators has imaginary phase".into(),
            )),
        }
    }

    /// Verifies independence, commutation and real signs.
    pub fn check_invariants(&self) -> Result<()> {
        if self.generators.len() != self.n {
            return Err(Error::InvalidGenerators(format!(
                "{} generators for {} qubits",
                self.generators.len(),
                self.n
            )));
        }
        for (i, g) in self.generators.iter().enumerate() {
            self.check_size(g)?;
            if !g.is_hermitian() {
                return Err(Error::InvalidGenerators(format!(
                    "generator {i} has an imaginary sign"
                )));
            }
            for h in &self.generators[i + 1..] {
                if g.symplectic_product(h) {
                    return Err(Error::InvalidGenerators(format!(
                        "generator {i} anticommutes"
                    )));
                }
            }
        }
        if symplectic::rank(&self.generators) != self.n {
            return Err(Error::InvalidGenerators("generators are dependent".into()));
        }
        Ok(())
    }
}
