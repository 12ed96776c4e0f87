//! Phased Pauli strings in the symplectic (x-bit, z-bit) encoding.
//!
//! A string over `n` qubits is stored as two packed bit vectors plus a
//! global phase `i^k`. The letter on qubit `q` is read from the bit pair
//! `(x_q, z_q)`: `(0,0)=I`, `(1,0)=X`, `(1,1)=Y`, `(0,1)=Z`. The phase multiplies
//! the tensor product of those letters, so `Y` is the Hermitian Pauli, not `XZ`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | '_' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Global phase `i^k`, k mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    fn add(self, k: u32) -> Phase {
        Phase(((self.0 as u32 + k) % 4) as u8)
    }
}

impl core::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        self.add(rhs.0 as u32)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

#[inline]
fn words(n: usize) -> usize {
    n.div_ceil(64)
}

/// Phase exponent (power of `i`) picked up when multiplying letter blocks
/// `a * b` word by word.
#[inline]
pub(crate) fn product_phase(ax: u64, az: u64, bx: u64, bz: u64) -> u32 {
    let a_x = ax & !az;
    let a_y = ax & az;
    let a_z = !ax & az;
    let b_x = bx & !bz;
    let b_y = bx & bz;
    let b_z = !bx & bz;
    // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
    let plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
    let minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
    (plus.count_ones() + 3 * minus.count_ones()) % 4
}

/// A phased tensor product of Pauli letters over `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { n, x: vec![0; words(n)], z: vec![0; words(n)], phase: Phase::PLUS_ONE }
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = PauliString::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    /// A string with `letter` on every qubit of `support` and identity elsewhere.
    pub fn from_support(n: usize, support: impl IntoIterator<Item = usize>, letter: Pauli) -> Self {
        let mut p = PauliString::identity(n);
        for q in support {
            p.set(q, letter);
        }
        p
    }

    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        let mut p = PauliString::identity(n);
        p.set(q, letter);
        p
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        debug_assert!(q < self.n);
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, q: usize, letter: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (w, b) = (q / 64, q % 64);
        let (xb, zb) = letter.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.get(q)).collect()
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).map(|(x, z)| (x | z).count_ones() as usize).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Qubits carrying a non-identity letter, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.x.iter().zip(&self.z).enumerate().flat_map(|(wi, (x, z))| {
            let mut bits = x | z;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// True when the letters agree, ignoring the phase.
    pub fn same_letters(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Group product `self * other` with exact phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// `self <- self * other`; lengths must agree.
    pub fn mul_assign_unchecked(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        let mut k = self.phase.0 as u32 + other.phase.0 as u32;
        for i in 0..self.x.len() {
            k += product_phase(self.x[i], self.z[i], other.x[i], other.z[i]);
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
        self.phase = Phase((k % 4) as u8);
    }

    /// Multiply letters only (`self <- self * other` up to phase). This is
    /// the Pauli-frame update.
    #[inline]
    pub fn xor_assign(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones() & 1;
        }
        parity == 1
    }

    /// Number of overlapping qubits where `self` has an X component, i.e.
    /// the parity used to test anticommutation with a Z-type operator.
    pub fn x_overlap_parity(&self, z_support: &PauliString) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= (self.x[i] & z_support.z[i]).count_ones() & 1;
        }
        parity == 1
    }

    /// Restrict to the listed qubits (in the given order).
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out.phase = self.phase;
        out
    }

    /// Embed into a larger register: qubit `i` of `self` goes to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> PauliString {
        let mut out = PauliString::identity(n);
        for (i, &q) in map.iter().enumerate() {
            out.set(q, self.get(i));
        }
        out.phase = self.phase;
        out
    }

    /// Conjugate in place by CNOT(control -> target), tracking the sign.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (xc, zc) = (self.x_bit(control), self.z_bit(control));
        let (xt, zt) = (self.x_bit(target), self.z_bit(target));
        // Aaronson-Gottesman sign rule for the Hermitian part.
        if xc && zt && (xt ^ zc ^ true) {
            self.phase = self.phase.add(2);
        }
        let new_xt = xt ^ xc;
        let new_zc = zc ^ zt;
        self.set(target, Pauli::from_bits(new_xt, zt));
        self.set(control, Pauli::from_bits(xc, new_zc));
    }

    /// Conjugate in place by a Hadamard on `q`.
    pub fn apply_h(&mut self, q: usize) {
        let (x, z) = (self.x_bit(q), self.z_bit(q));
        if x && z {
            self.phase = self.phase.add(2);
        }
        self.set(q, Pauli::from_bits(z, x));
    }

    /// Frame-only CNOT conjugation (no phase bookkeeping).
    #[inline]
    pub fn frame_cnot(&mut self, control: usize, target: usize) {
        let (cw, cb) = (control / 64, control % 64);
        let (tw, tb) = (target / 64, target % 64);
        let xc = (self.x[cw] >> cb) & 1;
        let zt = (self.z[tw] >> tb) & 1;
        self.x[tw] ^= xc << tb;
        self.z[cw] ^= zt << cb;
    }

    /// Frame-only Hadamard.
    #[inline]
    pub fn frame_h(&mut self, q: usize) {
        let (w, b) = (q / 64, q % 64);
        let x = (self.x[w] >> b) & 1;
        let z = (self.z[w] >> b) & 1;
        if x != z {
            self.x[w] ^= 1 << b;
            self.z[w] ^= 1 << b;
        }
    }

    /// Reset qubit `q` to identity.
    #[inline]
    pub fn clear(&mut self, q: usize) {
        let (w, b) = (q / 64, q % 64);
        self.x[w] &= !(1 << b);
        self.z[w] &= !(1 << b);
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses strings such as `"XZI"`, `"-iYY"` or `"+XX"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::PLUS_I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::PLUS_ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::PLUS_ONE, s)
        };
        let letters = rest
            .chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    message: String::from("invalid Pauli letter"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_letters(&letters).with_phase(phase))
    }
}

/// The Clifford gates supported by conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGate {
    Cnot,
    H,
    Identity,
}

impl CliffordGate {
    pub fn arity(self) -> usize {
        match self {
            CliffordGate::Cnot => 2,
            CliffordGate::H | CliffordGate::Identity => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CliffordGate::Cnot => "CNOT",
            CliffordGate::H => "H",
            CliffordGate::Identity => "I",
        }
    }
}

impl FromStr for CliffordGate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CNOT" | "CX" => Ok(CliffordGate::Cnot),
            "H" => Ok(CliffordGate::H),
            "I" | "ID" | "IDENTITY" => Ok(CliffordGate::Identity),
            _ => Err(Error::UnsupportedGate(s.into())),
        }
    }
}

/// Returns `U p U†` for the gate `U` acting on `qubits`.
pub fn conjugate_through_gate(p: &PauliString, gate: CliffordGate, qubits: &[usize]) -> Result<PauliString> {
    if qubits.len() != gate.arity() {
        return Err(Error::GateArity { gate: gate.name(), expected: gate.arity(), got: qubits.len() });
    }
    for &q in qubits {
        if q >= p.num_qubits() {
            return Err(Error::QubitOutOfRange { index: q, n: p.num_qubits() });
        }
    }
    let mut out = p.clone();
    match gate {
        CliffordGate::Cnot => {
            if qubits[0] == qubits[1] {
                return Err(Error::UnsupportedGate("CNOT with control == target".into()));
            }
            out.apply_cnot(qubits[0], qubits[1])
        }
        CliffordGate::H => out.apply_h(qubits[0]),
        CliffordGate::Identity => {}
    }
    Ok(out)
}
