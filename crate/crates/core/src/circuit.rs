//! Timestepped Clifford circuits, their fault locations, and Pauli-frame
//! execution.
//!
//! # Text format
//!
//! Circuits serialize to a line-oriented format with one layer per line.
//! Directive lines start with `.`; everything after `#` at the start of a
//! line is a comment.
//!
//! ```text
//! .qubits 5            # register size, must come first
//! .data 0 1 2          # optional: data-qubit indices
//! .round               # next layer starts a noisy round
//! .noiseless           # this and all later layers carry no noise
//! PZ 3; PZ 4; I 0; I 1; I 2
//! CX 0 3; CX 1 4; I 2
//! MZ 3 @0; MZ 4 @1; I 0; I 1; I 2
//! ```
//!
//! Element mnemonics: `PZ q`, `PX q`, `CX c t`, `H q`, `MZ q @tag`,
//! `MX q @tag`, `I q`. Elements within a layer are separated by `;`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// Identifier of a measurement result.
pub type MeasTag = u32;

/// One circuit element occupying one or two qubits for one timestep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    PrepZ(usize),
    PrepX(usize),
    Cnot { control: usize, target: usize },
    H(usize),
    MeasureZ { qubit: usize, tag: MeasTag },
    MeasureX { qubit: usize, tag: MeasTag },
    Idle(usize),
}

/// Noise-relevant category of a location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LocationKind {
    Prep,
    Gate1,
    Gate2,
    Measure,
    Idle,
}

impl LocationKind {
    pub const ALL: [LocationKind; 5] =
        [LocationKind::Prep, LocationKind::Gate1, LocationKind::Gate2, LocationKind::Measure, LocationKind::Idle];

    pub fn name(self) -> &'static str {
        match self {
            LocationKind::Prep => "prep",
            LocationKind::Gate1 => "gate1",
            LocationKind::Gate2 => "gate2",
            LocationKind::Measure => "measure",
            LocationKind::Idle => "idle",
        }
    }
}

impl Element {
    pub fn kind(&self) -> LocationKind {
        match self {
            Element::PrepZ(_) | Element::PrepX(_) => LocationKind::Prep,
            Element::H(_) => LocationKind::Gate1,
            Element::Cnot { .. } => LocationKind::Gate2,
            Element::MeasureZ { .. } | Element::MeasureX { .. } => LocationKind::Measure,
            Element::Idle(_) => LocationKind::Idle,
        }
    }

    /// Qubits touched, first entry is the control for CNOT.
    pub fn qubits(&self) -> ([usize; 2], usize) {
        match *self {
            Element::PrepZ(q)
            | Element::PrepX(q)
            | Element::H(q)
            | Element::Idle(q)
            | Element::MeasureZ { qubit: q, .. }
            | Element::MeasureX { qubit: q, .. } => ([q, q], 1),
            Element::Cnot { control, target } => ([control, target], 2),
        }
    }

    pub fn qubit_list(&self) -> Vec<usize> {
        let (qs, n) = self.qubits();
        qs[..n].to_vec()
    }

    pub fn measurement_tag(&self) -> Option<MeasTag> {
        match *self {
            Element::MeasureZ { tag, .. } | Element::MeasureX { tag, .. } => Some(tag),
            _ => None,
        }
    }

    fn touches(&self, q: usize) -> bool {
        let (qs, n) = self.qubits();
        qs[..n].contains(&q)
    }
}

/// A set of elements executed in the same timestep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub elements: Vec<Element>,
}

/// A timestepped Clifford circuit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Layer>,
    data_qubits: Vec<usize>,
    /// Layers at which a noisy syndrome round begins.
    round_starts: Vec<usize>,
    /// First layer of the noiseless tail, if any.
    noiseless_from: Option<usize>,
}

/// A spacetime position at which a fault may occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaultLocation {
    /// Position in [`Circuit::enumerate_locations`] order.
    pub index: usize,
    pub layer: usize,
    pub element: usize,
    pub kind: LocationKind,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit { n_qubits, ..Default::default() }
    }

    pub fn from_layers(n_qubits: usize, layers: Vec<Layer>) -> Self {
        Circuit { n_qubits, layers, ..Default::default() }
    }

    pub fn num_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn data_qubits(&self) -> &[usize] {
        &self.data_qubits
    }

    pub fn set_data_qubits(&mut self, data: Vec<usize>) {
        self.data_qubits = data;
    }

    pub fn round_starts(&self) -> &[usize] {
        &self.round_starts
    }

    pub fn noiseless_from(&self) -> Option<usize> {
        self.noiseless_from
    }

    /// True when the layer at `layer` may carry noise.
    pub fn is_noisy_layer(&self, layer: usize) -> bool {
        self.noiseless_from.is_none_or(|n| layer < n)
    }

    /// Marks the next pushed layer as the start of a noisy round.
    pub fn mark_round(&mut self) {
        self.round_starts.push(self.layers.len());
    }

    /// Marks the next pushed layer and everything after it as noiseless.
    pub fn mark_noiseless(&mut self) {
        self.noiseless_from = Some(self.layers.len());
    }

    /// Appends a layer, filling every untouched qubit with an explicit idle.
    pub fn push_layer(&mut self, mut elements: Vec<Element>) {
        let mut used = vec![false; self.n_qubits];
        for e in &elements {
            let (qs, n) = e.qubits();
            for &q in &qs[..n] {
                if q < self.n_qubits {
                    used[q] = true;
                }
            }
        }
        for (q, u) in used.iter().enumerate() {
            if !u {
                elements.push(Element::Idle(q));
            }
        }
        self.layers.push(Layer { elements });
    }

    /// Appends a layer verbatim.
    pub fn push_raw_layer(&mut self, elements: Vec<Element>) {
        self.layers.push(Layer { elements });
    }

    pub fn append(&mut self, other: &Circuit) {
        let offset = self.layers.len();
        self.round_starts.extend(other.round_starts.iter().map(|r| r + offset));
        if let Some(n) = other.noiseless_from {
            if self.noiseless_from.is_none() {
                self.noiseless_from = Some(n + offset);
            }
        }
        self.layers.extend(other.layers.iter().cloned());
    }

    pub fn count_elements(&self, pred: impl Fn(&Element) -> bool) -> usize {
        self.layers.iter().flat_map(|l| &l.elements).filter(|e| pred(e)).count()
    }

    pub fn cnot_count(&self) -> usize {
        self.count_elements(|e| matches!(e, Element::Cnot { .. }))
    }

    /// All measurement tags in execution order.
    pub fn measurement_tags(&self) -> Vec<MeasTag> {
        self.layers.iter().flat_map(|l| &l.elements).filter_map(|e| e.measurement_tag()).collect()
    }

    /// Every element is a fault location; layer-major, element-minor order.
    pub fn enumerate_locations(&self) -> Vec<FaultLocation> {
        let mut out = Vec::with_capacity(self.count_elements(|_| true));
        for (li, layer) in self.layers.iter().enumerate() {
            for (ei, e) in layer.elements.iter().enumerate() {
                out.push(FaultLocation { index: out.len(), layer: li, element: ei, kind: e.kind() });
            }
        }
        out
    }

    pub fn element(&self, loc: &FaultLocation) -> &Element {
        &self.layers[loc.layer].elements[loc.element]
    }

    /// True iff within each layer no qubit is touched twice.
    pub fn validate_layers(&self) -> bool {
        let mut seen = vec![usize::MAX; self.n_qubits];
        for (li, layer) in self.layers.iter().enumerate() {
            for e in &layer.elements {
                let (qs, n) = e.qubits();
                if n == 2 && qs[0] == qs[1] {
                    return false;
                }
                for &q in &qs[..n] {
                    if q >= self.n_qubits || seen[q] == li {
                        return false;
                    }
                    seen[q] = li;
                }
            }
        }
        true
    }

    /// True iff every qubit appears in every layer.
    pub fn is_complete(&self) -> bool {
        self.layers.iter().all(|l| (0..self.n_qubits).all(|q| l.elements.iter().any(|e| e.touches(q))))
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, ".qubits {}", self.n_qubits);
        if !self.data_qubits.is_empty() {
            s.push_str(".data");
            for q in &self.data_qubits {
                let _ = write!(s, " {q}");
            }
            s.push('\n');
        }
        for (li, layer) in self.layers.iter().enumerate() {
            if self.round_starts.contains(&li) {
                s.push_str(".round\n");
            }
            if self.noiseless_from == Some(li) {
                s.push_str(".noiseless\n");
            }
            let mut first = true;
            for e in &layer.elements {
                if !first {
                    s.push_str("; ");
                }
                first = false;
                let _ = match *e {
                    Element::PrepZ(q) => write!(s, "PZ {q}"),
                    Element::PrepX(q) => write!(s, "PX {q}"),
                    Element::Cnot { control, target } => write!(s, "CX {control} {target}"),
                    Element::H(q) => write!(s, "H {q}"),
                    Element::MeasureZ { qubit, tag } => write!(s, "MZ {qubit} @{tag}"),
                    Element::MeasureX { qubit, tag } => write!(s, "MX {qubit} @{tag}"),
                    Element::Idle(q) => write!(s, "I {q}"),
                };
            }
            s.push('\n');
        }
        if self.noiseless_from == Some(self.layers.len()) {
            s.push_str(".noiseless\n");
        }
        s
    }

    /// Parses the line-oriented text format.
    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            if let Some(directive) = line.strip_prefix('.') {
                let mut parts = directive.split_whitespace();
                let name = parts.next().unwrap_or("");
                match name {
                    "qubits" => {
                        if circuit.is_some() {
                            return Err(err("duplicate .qubits".into()));
                        }
                        let n = parse_num(parts.next(), line_no)?;
                        circuit = Some(Circuit::new(n));
                    }
                    _ => {
                        let c = circuit.as_mut().ok_or_else(|| err(".qubits must come first".into()))?;
                        match name {
                            "data" => {
                                c.data_qubits =
                                    parts.map(|p| parse_num(Some(p), line_no)).collect::<Result<Vec<_>>>()?;
                            }
                            "round" => c.mark_round(),
                            "noiseless" => c.mark_noiseless(),
                            other => return Err(err(format!("unknown directive .{other}"))),
                        }
                    }
                }
                continue;
            }
            let c = circuit.as_mut().ok_or_else(|| err(".qubits must come first".into()))?;
            let mut elements = Vec::new();
            for item in line.split(';') {
                let mut parts = item.split_whitespace();
                let op = parts.next().ok_or_else(|| err("empty element".into()))?;
                let mut q = || parse_num(parts.next(), line_no);
                let e = match op {
                    "PZ" => Element::PrepZ(q()?),
                    "PX" => Element::PrepX(q()?),
                    "H" => Element::H(q()?),
                    "I" => Element::Idle(q()?),
                    "CX" => {
                        let control = q()?;
                        let target = q()?;
                        Element::Cnot { control, target }
                    }
                    "MZ" | "MX" => {
                        let qubit = q()?;
                        let tag_str = parts.next().ok_or_else(|| err("missing measurement tag".into()))?;
                        let tag = tag_str
                            .strip_prefix('@')
                            .and_then(|t| t.parse().ok())
                            .ok_or_else(|| err(format!("bad tag `{tag_str}`")))?;
                        if op == "MZ" {
                            Element::MeasureZ { qubit, tag }
                        } else {
                            Element::MeasureX { qubit, tag }
                        }
                    }
                    other => return Err(err(format!("unknown element `{other}`"))),
                };
                let (qs, n) = e.qubits();
                if let Some(&bad) = qs[..n].iter().find(|&&q| q >= c.n_qubits) {
                    return Err(err(format!("qubit {bad} out of range")));
                }
                elements.push(e);
            }
            c.layers.push(Layer { elements });
        }
        Ok(circuit.unwrap_or_default())
    }
}

fn parse_num(s: Option<&str>, line: usize) -> Result<usize> {
    s.and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse { line, message: String::from("expected a non-negative integer") })
}

/// A Pauli fault attached to a location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub location: usize,
    pub pauli: PauliString,
}

/// Faults for one shot: Paulis applied after their location plus classical
/// measurement flips.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaultSet {
    pub faults: Vec<Fault>,
    pub measurement_flips: Vec<MeasTag>,
}

impl FaultSet {
    pub fn is_empty(&self) -> bool {
        self.faults.is_empty() && self.measurement_flips.is_empty()
    }

    pub fn single(location: usize, pauli: PauliString) -> Self {
        FaultSet { faults: vec![Fault { location, pauli }], measurement_flips: Vec::new() }
    }
}

/// Result of propagating a Pauli frame through a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameOutcome {
    /// Measurement tags whose result is flipped relative to the fault-free run.
    pub flipped: BTreeSet<MeasTag>,
    /// The frame left on the register after the last layer.
    pub residual: PauliString,
}

/// Checks that each fault is supported on its element and returns the
/// faults sorted by location.
pub(crate) fn checked_faults<'a>(c: &Circuit, faults: &'a FaultSet) -> Result<Vec<(usize, usize, &'a Fault)>> {
    let locations = c.enumerate_locations();
    let mut out = Vec::with_capacity(faults.faults.len());
    for f in &faults.faults {
        let loc = locations.get(f.location).ok_or(Error::UnknownLocation(f.location))?;
        if f.pauli.num_qubits() != c.num_qubits() {
            return Err(Error::LengthMismatch { left: f.pauli.num_qubits(), right: c.num_qubits() });
        }
        let e = c.element(loc);
        if f.pauli.support().any(|q| !e.touches(q)) {
            return Err(Error::FaultOutsideElement { location: f.location });
        }
        out.push((loc.layer, loc.element, f));
    }
    out.sort_by_key(|(l, e, _)| (*l, *e));
    Ok(out)
}

/// Propagates injected faults through the ideal circuit.
///
/// Measurement `MZ q` is flipped iff the frame carries X or Y on `q` at
/// measurement time (`MX q` dually with Z or Y). Preparations reset the
/// frame on their qubit.
pub fn frame_run(c: &Circuit, faults: &FaultSet) -> Result<FrameOutcome> {
    let sorted = checked_faults(c, faults)?;
    let tags: BTreeSet<MeasTag> = c.measurement_tags().into_iter().collect();
    for t in &faults.measurement_flips {
        if !tags.contains(t) {
            return Err(Error::UnknownTag(*t));
        }
    }
    let mut frame = PauliString::identity(c.num_qubits());
    let mut flipped = BTreeSet::new();
    let mut next = 0;
    for (li, layer) in c.layers().iter().enumerate() {
        for (ei, e) in layer.elements.iter().enumerate() {
            match *e {
                Element::PrepZ(q) | Element::PrepX(q) => frame.clear(q),
                Element::Cnot { control, target } => frame.frame_cnot(control, target),
                Element::H(q) => frame.frame_h(q),
                Element::MeasureZ { qubit, tag } => {
                    if frame.x_bit(qubit) {
                        toggle(&mut flipped, tag);
                    }
                }
                Element::MeasureX { qubit, tag } => {
                    if frame.z_bit(qubit) {
                        toggle(&mut flipped, tag);
                    }
                }
                Element::Idle(_) => {}
            }
            while next < sorted.len() && sorted[next].0 == li && sorted[next].1 == ei {
                frame.xor_assign(&sorted[next].2.pauli);
                next += 1;
            }
        }
    }
    for &t in &faults.measurement_flips {
        toggle(&mut flipped, t);
    }
    Ok(FrameOutcome { flipped, residual: frame })
}

fn toggle(set: &mut BTreeSet<MeasTag>, tag: MeasTag) {
    if !set.remove(&tag) {
        set.insert(tag);
    }
}

/// Low-level frame propagation from a given layer onward, used to build
/// per-fault effect tables. The frame is applied after element
/// `(start_layer, start_element)`; flipped tags are appended to `flips`.
pub(crate) fn propagate_from(
    c: &Circuit,
    start_layer: usize,
    start_element: usize,
    mut frame: PauliString,
    flips: &mut Vec<MeasTag>,
) -> PauliString {
    for (li, layer) in c.layers().iter().enumerate().skip(start_layer) {
        for (ei, e) in layer.elements.iter().enumerate() {
            if li == start_layer && ei <= start_element {
                continue;
            }
            match *e {
                Element::PrepZ(q) | Element::PrepX(q) => frame.clear(q),
                Element::Cnot { control, target } => frame.frame_cnot(control, target),
                Element::H(q) => frame.frame_h(q),
                Element::MeasureZ { qubit, tag } => {
                    if frame.x_bit(qubit) {
                        flips.push(tag);
                    }
                }
                Element::MeasureX { qubit, tag } => {
                    if frame.z_bit(qubit) {
                        flips.push(tag);
                    }
                }
                Element::Idle(_) => {}
            }
        }
    }
    frame
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;

    #[test]
    fn empty_circuit() {
        let c = Circuit::new(3);
        assert!(c.enumerate_locations().is_empty());
        assert!(c.validate_layers());
        let out = frame_run(&c, &FaultSet::default()).unwrap();
        assert!(out.flipped.is_empty());
        assert!(out.residual.is_identity());
    }

    #[test]
    fn one_layer_two_locations() {
        let mut c = Circuit::new(3);
        c.push_layer(vec![Element::Cnot { control: 0, target: 1 }]);
        let locs = c.enumerate_locations();
        assert_eq!(locs.len(), 2);
        assert_eq!(locs[0].kind, LocationKind::Gate2);
        assert_eq!(locs[1].kind, LocationKind::Idle);
        assert!(c.is_complete());
    }

    #[test]
    fn qubit_reuse_fails_validation() {
        let c = Circuit::from_layers(
            2,
            vec![Layer { elements: vec![Element::Cnot { control: 0, target: 1 }, Element::H(1)] }],
        );
        assert!(!c.validate_layers());
    }

    #[test]
    fn fault_outside_element_is_rejected() {
        let mut c = Circuit::new(2);
        c.push_layer(vec![Element::H(0)]);
        let bad = FaultSet::single(0, PauliString::single(2, 1, Pauli::X));
        assert_eq!(frame_run(&c, &bad), Err(Error::FaultOutsideElement { location: 0 }));
    }

    #[test]
    fn text_round_trip() {
        let mut c = Circuit::new(3);
        c.set_data_qubits(vec![0, 1]);
        c.mark_round();
        c.push_layer(vec![Element::PrepZ(2)]);
        c.push_layer(vec![Element::Cnot { control: 0, target: 2 }]);
        c.mark_noiseless();
        c.push_layer(vec![Element::MeasureZ { qubit: 2, tag: 7 }, Element::H(1)]);
        let text = c.to_text();
        let back = Circuit::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Circuit::from_text(".qubits 2\nCX 0 5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(matches!(Circuit::from_text("H 0\n"), Err(Error::Parse { line: 1, .. })));
    }
}
