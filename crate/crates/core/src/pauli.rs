//! Exact n-qubit Pauli algebra in binary symplectic form.
//!
//! A [`PauliString`] stores one X bit and one Z bit per qubit plus a global
//! power of `i`. The site operator is read from the bit pair:
//! `(0,0) = I`, `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`, and the full operator
//! is `i^phase_exp · ⊗ σ_site`. Multiplication rewrites every `Y` as `i·X·Z`
//! site-locally, so Hermitian strings are exactly those with an even
//! `phase_exp`.
//!
//! Qubit 0 is the least significant position of every basis-state index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-site Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// An n-qubit Pauli operator with exact phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// A single-site Pauli on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Pauli) -> Result<Self> {
        let mut p = Self::identity(n);
        p.set(qubit, letter)?;
        Ok(p)
    }

    /// Product of the same letter on every listed qubit.
    pub fn uniform(n: usize, qubits: &[usize], letter: Pauli) -> Result<Self> {
        let mut p = Self::identity(n);
        for &q in qubits {
            let cur = p.get(q)?;
            if cur != Pauli::I {
                // repeated site: squares to identity for Hermitian letters
                p.set(q, Pauli::I)?;
            } else {
                p.set(q, letter)?;
            }
        }
        Ok(p)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp % 4;
        self
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            Err(Error::QubitOutOfRange {
                index: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn get(&self, q: usize) -> Result<Pauli> {
        self.check(q)?;
        let (w, b) = (q / WORD, q % WORD);
        Ok(Pauli::from_bits(
            (self.x[w] >> b) & 1 == 1,
            (self.z[w] >> b) & 1 == 1,
        ))
    }

    /// Overwrites the letter on `q`, keeping `phase_exp`.
    pub fn set(&mut self, q: usize, letter: Pauli) -> Result<()> {
        self.check(q)?;
        let (w, b) = (q / WORD, q % WORD);
        let (xb, zb) = letter.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
        Ok(())
    }

    /// The X mask as a basis-state bit pattern. Only valid for n <= 64.
    pub fn x_mask(&self) -> u64 {
        debug_assert!(self.n <= WORD);
        self.x.first().copied().unwrap_or(0)
    }

    /// The Z mask as a basis-state bit pattern. Only valid for n <= 64.
    pub fn z_mask(&self) -> u64 {
        debug_assert!(self.n <= WORD);
        self.z.first().copied().unwrap_or(0)
    }

    pub fn y_count(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones())
            .sum()
    }

    pub fn weight(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones())
            .sum()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|w| *w == 0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// `Some(+1)` or `Some(-1)` for Hermitian strings, `None` for `±i` prefactors.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.get(q).map(|l| l != Pauli::I).unwrap_or(false))
            .collect()
    }

    /// True when the two strings have identical letters (phases may differ).
    pub fn same_letters(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        // i^(p_a + |Y_a|) X^xa Z^za · i^(p_b + |Y_b|) X^xb Z^zb, moving Z^za past X^xb
        let swaps: u32 = self
            .z
            .iter()
            .zip(&other.x)
            .map(|(z, x)| (z & x).count_ones())
            .sum();
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        let ys: u32 = x.iter().zip(&z).map(|(a, b)| (a & b).count_ones()).sum();
        let total = self.phase as i64
            + self.y_count() as i64
            + other.phase as i64
            + other.y_count() as i64
            + 2 * swaps as i64;
        let phase = (total - ys as i64).rem_euclid(4) as u8;
        Ok(PauliString {
            n: self.n,
            x,
            z,
            phase,
        })
    }

    /// `+1` if the operators commute, `-1` if they anticommute.
    pub fn commutes(&self, other: &Self) -> Result<i8> {
        self.check_size(other)?;
        Ok(if self.symplectic_product(other) {
            -1
        } else {
            1
        })
    }

    /// Symplectic inner product over GF(2); `true` means anticommuting.
    pub(crate) fn symplectic_product(&self, other: &Self) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc += (self.x[i] & other.z[i]).count_ones() + (self.z[i] & other.x[i]).count_ones();
        }
        acc % 2 == 1
    }

    /// Parses tokens such as `"Z1 X3"` with 0-based site indices.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::parse_labeled(text, n, 0)
    }

    /// Parses with site labels starting at `base` (label `base` is qubit 0).
    ///
    /// An optional leading coefficient (`+`, `-`, `i`, `+i`, `-i`) may be given
    /// either as its own token or glued to the first site token (`-X1`).
    pub fn parse_labeled(text: &str, n: usize, base: usize) -> Result<Self> {
        let normalized = text.replace('\u{2212}', "-");
        let mut tokens: Vec<&str> = normalized.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        let mut phase = 0u8;
        let mut first_owned = None;
        match tokens[0] {
            "+" => {
                tokens.remove(0);
            }
            "-" => {
                phase = 2;
                tokens.remove(0);
            }
            "i" | "+i" => {
                phase = 1;
                tokens.remove(0);
            }
            "-i" => {
                phase = 3;
                tokens.remove(0);
            }
            t if t.starts_with('-') || t.starts_with('+') => {
                if t.starts_with('-') {
                    phase = 2;
                }
                first_owned = Some(t[1..].to_string());
                tokens.remove(0);
            }
            _ => {}
        }
        let mut p = Self::identity(n);
        let mut seen = vec![false; n];
        let rest = first_owned
            .iter()
            .map(String::as_str)
            .chain(tokens.iter().copied());
        let mut any = false;
        for tok in rest {
            any = true;
            let mut chars = tok.chars();
            let letter = chars
                .next()
                .and_then(Pauli::from_symbol)
                .ok_or_else(|| Error::Parse(format!("bad token {tok:?}")))?;
            let idx_text = chars.as_str();
            if idx_text.is_empty() {
                if letter == Pauli::I && tok == "I" {
                    continue;
                }
                return Err(Error::Parse(format!("missing site index in {tok:?}")));
            }
            let label: usize = idx_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad site index in {tok:?}")))?;
            let q = label
                .checked_sub(base)
                .ok_or(Error::QubitOutOfRange { index: label, n })?;
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            if seen[q] {
                return Err(Error::Parse(format!("site {label} appears twice")));
            }
            seen[q] = true;
            p.set(q, letter)?;
        }
        if !any {
            return Err(Error::Parse("missing operator after coefficient".into()));
        }
        p.phase = phase;
        Ok(p)
    }

    /// Renders with 0-based site labels.
    pub fn render(&self) -> String {
        self.render_labeled(0)
    }

    pub fn render_labeled(&self, base: usize) -> String {
        let sites: Vec<String> = (0..self.n)
            .filter_map(|q| match self.get(q) {
                Ok(Pauli::I) | Err(_) => None,
                Ok(l) => Some(format!("{}{}", l.symbol(), q + base)),
            })
            .collect();
        let body = if sites.is_empty() {
            "I".to_string()
        } else {
            sites.join(" ")
        };
        match self.phase {
            0 => body,
            1 => format!("i {body}"),
            2 => format!("-{body}"),
            _ => format!("-i {body}"),
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
