//! GF(2) row reduction over the symplectic representation of Pauli strings.

use alloc::vec::Vec;

use crate::pauli::PauliString;

/// Packs the letters of `p` into one bit vector `[x | z]`.
pub fn pack(p: &PauliString) -> Vec<u64> {
    let mut v = Vec::with_capacity(2 * p.x_words().len());
    v.extend_from_slice(p.x_words());
    v.extend_from_slice(p.z_words());
    v
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// An incrementally built row-echelon basis of Pauli letter vectors.
#[derive(Debug, Clone, Default)]
pub struct SymplecticBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl SymplecticBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_paulis<'a>(paulis: impl IntoIterator<Item = &'a PauliString>) -> Self {
        let mut b = Self::new();
        for p in paulis {
            b.insert(p);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            if (v[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    /// Adds `p`; returns `false` if it was already in the span.
    pub fn insert(&mut self, p: &PauliString) -> bool {
        let v = self.reduce(pack(p));
        match leading_bit(&v) {
            None => false,
            Some(pivot) => {
                // Keep the basis fully reduced so `reduce` is a single pass.
                for (_, row) in self.rows.iter_mut() {
                    if (row[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                        for (a, b) in row.iter_mut().zip(&v) {
                            *a ^= b;
                        }
                    }
                }
                self.rows.push((pivot, v));
                true
            }
        }
    }

    /// Whether the letters of `p` lie in the span (phase ignored).
    pub fn contains(&self, p: &PauliString) -> bool {
        leading_bit(&self.reduce(pack(p))).is_none()
    }
}

/// Rank of a set of Pauli strings over GF(2).
pub fn rank(paulis: &[PauliString]) -> usize {
    SymplecticBasis::from_paulis(paulis).rank()
}
