//! Small exact stabilizer simulator used as an oracle for the Pauli-frame
//! engine and for checking encoded states. Limited to 32 qubits.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::circuit::{checked_faults, Circuit, Element, FaultSet, MeasTag};
use crate::error::{Error, Result};
use crate::pauli::{product_phase, Pauli, PauliString, Phase};

pub const MAX_TABLEAU_QUBITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Row {
    x: u64,
    z: u64,
    /// Power of i.
    phase: u8,
}

impl Row {
    fn mul_assign(&mut self, other: &Row) {
        let k = self.phase as u32 + other.phase as u32 + product_phase(self.x, self.z, other.x, other.z);
        self.x ^= other.x;
        self.z ^= other.z;
        self.phase = (k % 4) as u8;
    }

    fn anticommutes(&self, other: &Row) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 1
    }
}

/// Aaronson-Gottesman tableau: `n` destabilizers followed by `n` stabilizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<Row>,
}

impl StabilizerTableau {
    /// The state `|0...0>`.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_TABLEAU_QUBITS {
            return Err(Error::TableauTooLarge { n, max: MAX_TABLEAU_QUBITS });
        }
        let mut rows = Vec::with_capacity(2 * n);
        for q in 0..n {
            rows.push(Row { x: 1 << q, z: 0, phase: 0 });
        }
        for q in 0..n {
            rows.push(Row { x: 0, z: 1 << q, phase: 0 });
        }
        Ok(StabilizerTableau { n, rows })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    fn row_from(p: &PauliString) -> Row {
        let mut r = Row { x: 0, z: 0, phase: p.phase().power() };
        for q in 0..p.num_qubits() {
            let (x, z) = p.get(q).bits();
            r.x |= (x as u64) << q;
            r.z |= (z as u64) << q;
        }
        r
    }

    fn to_pauli(&self, r: &Row) -> PauliString {
        let mut p = PauliString::identity(self.n);
        for q in 0..self.n {
            p.set(q, Pauli::from_bits((r.x >> q) & 1 == 1, (r.z >> q) & 1 == 1));
        }
        p.with_phase(Phase::from_power(r.phase as u32))
    }

    /// Current stabilizer generators.
    pub fn stabilizers(&self) -> Vec<PauliString> {
        self.rows[self.n..].iter().map(|r| self.to_pauli(r)).collect()
    }

    pub fn destabilizers(&self) -> Vec<PauliString> {
        self.rows[..self.n].iter().map(|r| self.to_pauli(r)).collect()
    }

    pub fn cnot(&mut self, c: usize, t: usize) -> Result<()> {
        self.check(c)?;
        self.check(t)?;
        for r in &mut self.rows {
            let xc = (r.x >> c) & 1;
            let zc = (r.z >> c) & 1;
            let xt = (r.x >> t) & 1;
            let zt = (r.z >> t) & 1;
            if xc == 1 && zt == 1 && (xt ^ zc ^ 1) == 1 {
                r.phase = (r.phase + 2) % 4;
            }
            r.x ^= xc << t;
            r.z ^= zt << c;
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.check(q)?;
        for r in &mut self.rows {
            let x = (r.x >> q) & 1;
            let z = (r.z >> q) & 1;
            if x == 1 && z == 1 {
                r.phase = (r.phase + 2) % 4;
            }
            if x != z {
                r.x ^= 1 << q;
                r.z ^= 1 << q;
            }
        }
        Ok(())
    }

    /// Applies a Pauli operator to the state (conjugation flips signs).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::LengthMismatch { left: p.num_qubits(), right: self.n });
        }
        let pr = Self::row_from(p);
        for r in &mut self.rows {
            if r.anticommutes(&pr) {
                r.phase = (r.phase + 2) % 4;
            }
        }
        Ok(())
    }

    /// Measures Z on `q`. Returns `(outcome_is_minus_one, was_deterministic)`.
    pub fn measure_z(&mut self, q: usize, rng: &mut impl RngCore) -> Result<(bool, bool)> {
        self.check(q)?;
        let n = self.n;
        let pivot = (n..2 * n).find(|&i| (self.rows[i].x >> q) & 1 == 1);
        match pivot {
            Some(p) => {
                let pivot_row = self.rows[p];
                for i in 0..2 * n {
                    if i != p && (self.rows[i].x >> q) & 1 == 1 {
                        self.rows[i].mul_assign(&pivot_row);
                    }
                }
                self.rows[p - n] = pivot_row;
                let outcome = rng.next_u32() & 1 == 1;
                self.rows[p] = Row { x: 0, z: 1 << q, phase: if outcome { 2 } else { 0 } };
                Ok((outcome, false))
            }
            None => {
                let mut acc = Row { x: 0, z: 0, phase: 0 };
                for i in 0..n {
                    if (self.rows[i].x >> q) & 1 == 1 {
                        let s = self.rows[i + n];
                        acc.mul_assign(&s);
                    }
                }
                Ok((acc.phase == 2, true))
            }
        }
    }

    pub fn measure_x(&mut self, q: usize, rng: &mut impl RngCore) -> Result<(bool, bool)> {
        self.h(q)?;
        let r = self.measure_z(q, rng);
        self.h(q)?;
        r
    }

    pub fn prep_z(&mut self, q: usize, rng: &mut impl RngCore) -> Result<()> {
        let (minus, _) = self.measure_z(q, rng)?;
        if minus {
            self.apply_pauli(&PauliString::single(self.n, q, Pauli::X))?;
        }
        Ok(())
    }

    pub fn prep_x(&mut self, q: usize, rng: &mut impl RngCore) -> Result<()> {
        self.prep_z(q, rng)?;
        self.h(q)
    }

    /// Deterministic expectation of a Hermitian Pauli: `Some(true)` for +1,
    /// `Some(false)` for -1, `None` if the outcome would be random.
    pub fn expectation(&self, p: &PauliString) -> Result<Option<bool>> {
        if p.num_qubits() != self.n {
            return Err(Error::LengthMismatch { left: p.num_qubits(), right: self.n });
        }
        let pr = Self::row_from(p);
        if self.rows[self.n..].iter().any(|s| s.anticommutes(&pr)) {
            return Ok(None);
        }
        let mut acc = Row { x: 0, z: 0, phase: 0 };
        for i in 0..self.n {
            if self.rows[i].anticommutes(&pr) {
                let s = self.rows[i + self.n];
                acc.mul_assign(&s);
            }
        }
        debug_assert!(acc.x == pr.x && acc.z == pr.z);
        Ok(Some(acc.phase == pr.phase))
    }

    /// True iff `p` (with its sign) stabilizes the state.
    pub fn is_stabilized_by(&self, p: &PauliString) -> Result<bool> {
        Ok(self.expectation(p)? == Some(true))
    }
}

/// Final state and measurement record of a tableau run.
#[derive(Debug, Clone)]
pub struct TableauRun {
    pub tableau: StabilizerTableau,
    /// `true` means outcome -1.
    pub outcomes: BTreeMap<MeasTag, bool>,
    pub deterministic: BTreeMap<MeasTag, bool>,
}

/// Runs a circuit on the exact simulator. Random outcomes consume a
/// ChaCha8 stream seeded from `seed`.
pub fn tableau_run(initial: &StabilizerTableau, circuit: &Circuit, seed: u64) -> Result<TableauRun> {
    tableau_run_with_faults(initial, circuit, &FaultSet::default(), seed)
}

/// As [`tableau_run`], applying each fault Pauli right after its location
/// and flipping the listed measurement results.
pub fn tableau_run_with_faults(
    initial: &StabilizerTableau,
    circuit: &Circuit,
    faults: &FaultSet,
    seed: u64,
) -> Result<TableauRun> {
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(Error::LengthMismatch { left: circuit.num_qubits(), right: initial.num_qubits() });
    }
    let sorted = checked_faults(circuit, faults)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = initial.clone();
    let mut outcomes = BTreeMap::new();
    let mut deterministic = BTreeMap::new();
    let mut next = 0;
    for (li, layer) in circuit.layers().iter().enumerate() {
        for (ei, e) in layer.elements.iter().enumerate() {
            match *e {
                Element::PrepZ(q) => t.prep_z(q, &mut rng)?,
                Element::PrepX(q) => t.prep_x(q, &mut rng)?,
                Element::Cnot { control, target } => t.cnot(control, target)?,
                Element::H(q) => t.h(q)?,
                Element::MeasureZ { qubit, tag } => {
                    let (m, det) = t.measure_z(qubit, &mut rng)?;
                    outcomes.insert(tag, m);
                    deterministic.insert(tag, det);
                }
                Element::MeasureX { qubit, tag } => {
                    let (m, det) = t.measure_x(qubit, &mut rng)?;
                    outcomes.insert(tag, m);
                    deterministic.insert(tag, det);
                }
                Element::Idle(q) => t.check(q)?,
            }
            while next < sorted.len() && sorted[next].0 == li && sorted[next].1 == ei {
                t.apply_pauli(&sorted[next].2.pauli)?;
                next += 1;
            }
        }
    }
    for tag in &faults.measurement_flips {
        let v = outcomes.get_mut(tag).ok_or(Error::UnknownTag(*tag))?;
        *v = !*v;
    }
    Ok(TableauRun { tableau: t, outcomes, deterministic })
}
