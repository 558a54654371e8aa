//! GF(2) linear algebra over symplectic Pauli vectors.

use crate::pauli::PauliString;

fn row_of(p: &PauliString) -> Vec<u64> {
    p.x_words().iter().chain(p.z_words()).copied().collect()
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn bit(row: &[u64], b: usize) -> bool {
    (row[b / 64] >> (b % 64)) & 1 == 1
}

/// Incremental echelon basis that remembers which inputs each row combines.
pub(crate) struct Echelon {
    rows: Vec<(Vec<u64>, Vec<u64>)>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            inputs: 0,
        }
    }

    fn reduce(&self, mut row: Vec<u64>, mut combo: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
        for (r, c) in &self.rows {
            let lead = leading_bit(r).expect("stored rows are nonzero");
            if bit(&row, lead) {
                row.iter_mut().zip(r).for_each(|(a, b)| *a ^= b);
                combo.iter_mut().zip(c).for_each(|(a, b)| *a ^= b);
            }
        }
        (row, combo)
    }

    fn combo_words(&self) -> usize {
        (self.inputs + 1).div_ceil(64).max(1) + 1
    }

    /// Adds `p`; returns `false` when it was already in the span.
    pub fn insert(&mut self, p: &PauliString) -> bool {
        let idx = self.inputs;
        self.inputs += 1;
        let mut combo = vec![0u64; self.combo_words()];
        combo[idx / 64] |= 1 << (idx % 64);
        let widened: Vec<(Vec<u64>, Vec<u64>)> = self
            .rows
            .drain(..)
            .map(|(r, mut c)| {
                c.resize(combo.len(), 0);
                (r, c)
            })
            .collect();
        self.rows = widened;
        let (row, combo) = self.reduce(row_of(p), combo);
        match leading_bit(&row) {
            None => false,
            Some(lead) => {
                // keep fully reduced form so later reductions stay single-pass
                for (r, c) in self.rows.iter_mut() {
                    if bit(r, lead) {
                        r.iter_mut().zip(&row).for_each(|(a, b)| *a ^= b);
                        c.iter_mut().zip(&combo).for_each(|(a, b)| *a ^= b);
                    }
                }
                self.rows.push((row, combo));
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Indices of inserted operators whose product equals `p` up to phase.
    pub fn solve(&self, p: &PauliString) -> Option<Vec<usize>> {
        let combo = vec![0u64; self.combo_words()];
        let (row, combo) = self.reduce(row_of(p), combo);
        if leading_bit(&row).is_some() {
            return None;
        }
        Some((0..self.inputs).filter(|&i| bit(&combo, i)).collect())
    }
}

pub(crate) fn rank(ops: &[PauliString]) -> usize {
    let mut e = Echelon::new();
    for p in ops {
        e.insert(p);
    }
    e.rank()
}
