//! Stabilizer codes used throughout the laboratory: the three-qubit
//! repetition code, Steane's seven-qubit code, and planar/toric surface
//! codes, each with a syndrome-extraction circuit.

mod repetition;
mod steane;
pub mod surface;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use repetition::repetition3;
pub use steane::{
    encoded_register, malignant_single_faults, measured_syndrome, steane7, steane_encoder, transversal_cnot, MalignantFault,
    SteaneBundle, HAMMING_ROWS,
};
pub use surface::{
    memory_circuit_ordered, push_round, push_round_ordered, surface_lattice, syndrome_circuit_ordered, CnotOrder, CNOT_ORDER,
    surface_memory_circuit, surface_syndrome_circuit, MeasInfo, Schedule, SiteKind,
    StabKind, Stabilizer, SurfaceCircuit, SurfaceLattice, Topology,
};

use crate::circuit::{Circuit, MeasTag};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::symplectic::SymplecticBasis;

/// Which error letters a code is meant to correct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// General X, Y and Z errors.
    All,
    /// Bit flips only, as for the classical repetition code.
    XOnly,
}

/// A conjugate pair of logical operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalPair {
    pub x: PauliString,
    pub z: PauliString,
}

/// Stabilizer generators plus logical operators.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    pub name: String,
    pub n: usize,
    pub generators: Vec<PauliString>,
    pub logicals: Vec<LogicalPair>,
    pub distance: usize,
    pub protects: ErrorClass,
}

impl StabilizerCode {
    pub fn x_l(&self) -> &PauliString {
        &self.logicals[0].x
    }

    pub fn z_l(&self) -> &PauliString {
        &self.logicals[0].z
    }

    /// One bit per generator: `true` where `e` anticommutes.
    pub fn syndrome(&self, e: &PauliString) -> Vec<bool> {
        self.generators.iter().map(|g| g.anticommutes_unchecked(e)).collect()
    }

    /// Checks the commutation structure: generators commute pairwise,
    /// logicals commute with generators, and `X_L^i` anticommutes exactly
    /// with `Z_L^i`.
    pub fn check_structure(&self) -> bool {
        let gens_ok = self
            .generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| !a.anticommutes_unchecked(b)));
        let logical_ok = self.logicals.iter().all(|l| {
            self.generators.iter().all(|g| !g.anticommutes_unchecked(&l.x) && !g.anticommutes_unchecked(&l.z))
        });
        let pairs_ok = self.logicals.iter().enumerate().all(|(i, a)| {
            self.logicals.iter().enumerate().all(|(j, b)| {
                a.x.anticommutes_unchecked(&b.z) == (i == j)
                    && !a.x.anticommutes_unchecked(&b.x)
                    && !a.z.anticommutes_unchecked(&b.z)
            })
        });
        gens_ok && logical_ok && pairs_ok
    }

    pub fn stabilizer_basis(&self) -> SymplecticBasis {
        SymplecticBasis::from_paulis(&self.generators)
    }

    /// Whether `p` acts trivially on the code space (up to phase).
    pub fn is_stabilizer(&self, p: &PauliString) -> bool {
        self.stabilizer_basis().contains(p)
    }

    /// Which logical operators `p` flips: `(anticommutes with Z_L, anticommutes with X_L)`
    /// for each logical pair.
    pub fn logical_flips(&self, p: &PauliString) -> Vec<(bool, bool)> {
        self.logicals.iter().map(|l| (p.anticommutes_unchecked(&l.z), p.anticommutes_unchecked(&l.x))).collect()
    }
}

/// Syndrome-extraction circuit with the meaning of each measurement.
#[derive(Debug, Clone)]
pub struct SyndromeCircuit {
    pub circuit: Circuit,
    /// Qubits carrying the code block, in code order.
    pub data: Vec<usize>,
    /// Measurement tag -> generator index.
    pub generator_of: BTreeMap<MeasTag, usize>,
}

impl SyndromeCircuit {
    /// Reorders a tag-keyed outcome map into generator order.
    pub fn syndrome_from(&self, outcomes: &BTreeMap<MeasTag, bool>) -> Vec<bool> {
        let mut s = alloc::vec![false; self.generator_of.len()];
        for (tag, &g) in &self.generator_of {
            s[g] = outcomes.get(tag).copied().unwrap_or(false);
        }
        s
    }
}

/// Table decoder that maps each syndrome of a correctable single error to
/// its correction.
#[derive(Debug, Clone)]
pub struct LookupDecoder {
    table: BTreeMap<Vec<bool>, PauliString>,
    n: usize,
}

impl LookupDecoder {
    /// Table for all weight-one errors of the code's error class.
    pub fn single_errors(code: &StabilizerCode) -> Self {
        let letters: &[Pauli] = match code.protects {
            ErrorClass::All => &Pauli::NON_IDENTITY,
            ErrorClass::XOnly => &[Pauli::X],
        };
        let mut table = BTreeMap::new();
        for q in 0..code.n {
            for &l in letters {
                let e = PauliString::single(code.n, q, l);
                table.entry(code.syndrome(&e)).or_insert(e);
            }
        }
        LookupDecoder { table, n: code.n }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Identity for the zero syndrome, the tabulated correction otherwise,
    /// `None` when the syndrome is not in the table.
    pub fn correction(&self, syndrome: &[bool]) -> Option<PauliString> {
        if syndrome.iter().all(|s| !s) {
            return Some(PauliString::identity(self.n));
        }
        self.table.get(syndrome).cloned()
    }
}

pub const MAX_BRUTE_FORCE_QUBITS: usize = 13;

/// Minimum weight of a Pauli (restricted to the code's error class) that
/// commutes with every generator but acts nontrivially on the logical space.
pub fn min_distance_bruteforce(code: &StabilizerCode) -> Result<usize> {
    let n = code.n;
    if n > MAX_BRUTE_FORCE_QUBITS {
        return Err(Error::CodeTooLarge { n, max: MAX_BRUTE_FORCE_QUBITS });
    }
    let letters: &[Pauli] = match code.protects {
        ErrorClass::All => &Pauli::NON_IDENTITY,
        ErrorClass::XOnly => &[Pauli::X],
    };
    // Per (qubit, letter): syndrome mask and logical-flip mask.
    let table: Vec<Vec<(u64, u64)>> = (0..n)
        .map(|q| {
            letters
                .iter()
                .map(|&l| {
                    let e = PauliString::single(n, q, l);
                    let s = code
                        .generators
                        .iter()
                        .enumerate()
                        .fold(0u64, |m, (i, g)| m | ((g.anticommutes_unchecked(&e) as u64) << i));
                    let f = code.logicals.iter().enumerate().fold(0u64, |m, (i, lp)| {
                        m | ((lp.z.anticommutes_unchecked(&e) as u64) << (2 * i))
                            | ((lp.x.anticommutes_unchecked(&e) as u64) << (2 * i + 1))
                    });
                    (s, f)
                })
                .collect()
        })
        .collect();
    for w in 1..=n {
        if search(&table, w, 0, 0, 0) {
            return Ok(w);
        }
    }
    // No logical operator inside the error class.
    Ok(usize::MAX)
}

fn search(table: &[Vec<(u64, u64)>], remaining: usize, start: usize, syn: u64, flips: u64) -> bool {
    if remaining == 0 {
        return syn == 0 && flips != 0;
    }
    for q in start..=table.len() - remaining {
        for &(s, f) in &table[q] {
            if search(table, remaining - 1, q + 1, syn ^ s, flips ^ f) {
                return true;
            }
        }
    }
    false
}
