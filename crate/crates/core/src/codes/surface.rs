//! Planar and toric surface codes on a square grid.
//!
//! Qubits sit on every vertex of a `rows x cols` grid and are numbered
//! `r * cols + c`. Sites with `r + c` even hold data; `(odd r, even c)`
//! holds a Z-type (plaquette) ancilla and `(even r, odd c)` an X-type
//! (star) ancilla. The planar code uses a `(2d-1) x (2d-1)` patch with
//! rough top/bottom edges for X errors and left/right edges for Z errors.
//! The toric code uses a periodic `2L x 2L` grid.
//!
//! Each ancilla touches its data neighbours in the fixed order north,
//! east, west, south ([`CNOT_ORDER`]). Z-type checks use data->ancilla
//! CNOTs, X-type checks ancilla->data CNOTs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ErrorClass, LogicalPair, StabilizerCode};
use crate::circuit::{Circuit, Element, MeasTag};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Topology {
    Planar { d: usize },
    Toric { l: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SiteKind {
    Data,
    ZAncilla,
    XAncilla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StabKind {
    X,
    Z,
}

impl StabKind {
    pub fn letter(self) -> Pauli {
        match self {
            StabKind::X => Pauli::X,
            StabKind::Z => Pauli::Z,
        }
    }

    pub fn dual(self) -> StabKind {
        match self {
            StabKind::X => StabKind::Z,
            StabKind::Z => StabKind::X,
        }
    }
}

/// Neighbour offsets, indexed north, east, west, south.
pub const DIRECTIONS: [(isize, isize); 4] = [(-1, 0), (0, 1), (0, -1), (1, 0)];

/// Order in which each check species visits its neighbours (indices into
/// [`DIRECTIONS`]), for Z-type and X-type checks respectively.
pub type CnotOrder = [[usize; 4]; 2];

/// The contact order of every generated circuit: north, east, west, south
/// for both species.
pub const CNOT_ORDER: CnotOrder = [[0, 1, 2, 3], [0, 1, 2, 3]];

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Stabilizer {
    pub kind: StabKind,
    /// Grid id of the ancilla.
    pub site: usize,
    pub row: usize,
    pub col: usize,
    /// Data neighbours (grid ids) in north, east, west, south order.
    pub contacts: [Option<usize>; 4],
}

impl Stabilizer {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.contacts.iter().flatten().copied()
    }

    pub fn weight(&self) -> usize {
        self.contacts.iter().flatten().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SurfaceLattice {
    pub topology: Topology,
    pub rows: usize,
    pub cols: usize,
    /// Grid ids of the data qubits, in code order.
    pub data: Vec<usize>,
    pub stabilizers: Vec<Stabilizer>,
    /// Logical pairs as grid-id supports: `(X_L support, Z_L support)`.
    pub logicals: Vec<(Vec<usize>, Vec<usize>)>,
    #[cfg_attr(feature = "serde", serde(skip))]
    data_index: Vec<Option<usize>>,
}

/// Builds a planar (`d` odd, `d >= 1`) or toric (`L >= 2`) lattice.
pub fn surface_lattice(topology: Topology) -> Result<SurfaceLattice> {
    let (rows, cols) = match topology {
        Topology::Planar { d } => {
            if d == 0 || d % 2 == 0 {
                return Err(Error::InvalidLattice(format!("planar distance must be odd and positive, got {d}")));
            }
            (2 * d - 1, 2 * d - 1)
        }
        Topology::Toric { l } => {
            if l < 2 {
                return Err(Error::InvalidLattice(format!("toric size must be at least 2, got {l}")));
            }
            (2 * l, 2 * l)
        }
    };
    let periodic = matches!(topology, Topology::Toric { .. });
    let id = |r: usize, c: usize| r * cols + c;

    let mut data = Vec::new();
    let mut data_index = vec![None; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if (r + c) % 2 == 0 {
                data_index[id(r, c)] = Some(data.len());
                data.push(id(r, c));
            }
        }
    }

    let mut stabilizers = Vec::new();
    // Z-type first, then X-type, each row-major.
    for kind in [StabKind::Z, StabKind::X] {
        for r in 0..rows {
            for c in 0..cols {
                let is_kind = match kind {
                    StabKind::Z => r % 2 == 1 && c % 2 == 0,
                    StabKind::X => r % 2 == 0 && c % 2 == 1,
                };
                if !is_kind {
                    continue;
                }
                let contacts = DIRECTIONS.map(|(dr, dc)| {
                    let nr = r as isize + dr;
                    let nc = c as isize + dc;
                    if periodic {
                        Some(id(nr.rem_euclid(rows as isize) as usize, nc.rem_euclid(cols as isize) as usize))
                    } else if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                        None
                    } else {
                        Some(id(nr as usize, nc as usize))
                    }
                });
                stabilizers.push(Stabilizer { kind, site: id(r, c), row: r, col: c, contacts });
            }
        }
    }

    let logicals = match topology {
        Topology::Planar { .. } => vec![(
            (0..rows).step_by(2).map(|r| id(r, 0)).collect(),
            (0..cols).step_by(2).map(|c| id(0, c)).collect(),
        )],
        Topology::Toric { .. } => vec![
            ((0..rows).step_by(2).map(|r| id(r, 0)).collect(), (0..cols).step_by(2).map(|c| id(0, c)).collect()),
            ((1..cols).step_by(2).map(|c| id(1, c)).collect(), (1..rows).step_by(2).map(|r| id(r, 1)).collect()),
        ],
    };

    Ok(SurfaceLattice { topology, rows, cols, data, stabilizers, logicals, data_index })
}

impl SurfaceLattice {
    pub fn num_qubits(&self) -> usize {
        self.rows * self.cols
    }

    pub fn num_data(&self) -> usize {
        self.data.len()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.topology, Topology::Toric { .. })
    }

    /// Code distance: `d` for planar, `L` for toric.
    pub fn distance(&self) -> usize {
        match self.topology {
            Topology::Planar { d } => d,
            Topology::Toric { l } => l,
        }
    }

    pub fn grid(&self, r: usize, c: usize) -> usize {
        r * self.cols + c
    }

    pub fn coords(&self, q: usize) -> (usize, usize) {
        (q / self.cols, q % self.cols)
    }

    pub fn site_kind(&self, q: usize) -> SiteKind {
        let (r, c) = self.coords(q);
        match (r % 2, c % 2) {
            (0, 0) | (1, 1) => SiteKind::Data,
            (1, 0) => SiteKind::ZAncilla,
            _ => SiteKind::XAncilla,
        }
    }

    /// Position of a data qubit in code order.
    pub fn data_index(&self, q: usize) -> Option<usize> {
        self.data_index.get(q).copied().flatten()
    }

    /// Indices of the stabilizers of one kind.
    pub fn stabilizers_of(&self, kind: StabKind) -> impl Iterator<Item = usize> + '_ {
        self.stabilizers.iter().enumerate().filter(move |(_, s)| s.kind == kind).map(|(i, _)| i)
    }

    /// Stabilizer index of the ancilla at grid id `q`.
    pub fn stabilizer_at(&self, q: usize) -> Option<usize> {
        self.stabilizers.iter().position(|s| s.site == q)
    }

    /// Pauli over the data qubits (code order) with `letter` on the given grid ids.
    pub fn data_pauli(&self, grid_ids: impl IntoIterator<Item = usize>, letter: Pauli) -> PauliString {
        let mut p = PauliString::identity(self.num_data());
        for q in grid_ids {
            let i = self.data_index(q).expect("grid id is not a data site");
            let cur = p.get(i);
            let (ax, az) = cur.bits();
            let (bx, bz) = letter.bits();
            p.set(i, Pauli::from_bits(ax ^ bx, az ^ bz));
        }
        p
    }

    /// Restricts a full-register Pauli to the data qubits.
    pub fn to_data(&self, full: &PauliString) -> PauliString {
        full.restrict(&self.data)
    }

    pub fn stabilizer_pauli(&self, s: usize) -> PauliString {
        let st = &self.stabilizers[s];
        self.data_pauli(st.support(), st.kind.letter())
    }

    pub fn code(&self) -> StabilizerCode {
        StabilizerCode {
            name: match self.topology {
                Topology::Planar { d } => format!("planar({d})"),
                Topology::Toric { l } => format!("toric({l})"),
            },
            n: self.num_data(),
            generators: (0..self.stabilizers.len()).map(|s| self.stabilizer_pauli(s)).collect(),
            logicals: self
                .logicals
                .iter()
                .map(|(x, z)| LogicalPair {
                    x: self.data_pauli(x.iter().copied(), Pauli::X),
                    z: self.data_pauli(z.iter().copied(), Pauli::Z),
                })
                .collect(),
            distance: self.distance(),
            protects: ErrorClass::All,
        }
    }

    fn axis_delta(&self, a: usize, b: usize, len: usize) -> (usize, bool) {
        // Returns (|steps| in grid units, step is positive).
        let fwd = (b + len - a) % len;
        if !self.is_periodic() {
            return if b >= a { (b - a, true) } else { (a - b, false) };
        }
        let back = len - fwd;
        if fwd == 0 {
            (0, true)
        } else if fwd <= back {
            (fwd, true)
        } else {
            (back, false)
        }
    }

    /// Graph distance between two same-kind stabilizers, in data-qubit steps.
    pub fn stab_distance(&self, a: usize, b: usize) -> usize {
        let (sa, sb) = (&self.stabilizers[a], &self.stabilizers[b]);
        self.axis_delta(sa.row, sb.row, self.rows).0 / 2 + self.axis_delta(sa.col, sb.col, self.cols).0 / 2
    }

    /// Distance from a stabilizer to the boundary that absorbs its
    /// defects; `None` on the torus.
    pub fn boundary_distance(&self, s: usize) -> Option<usize> {
        self.boundary_side(s).map(|(d, _)| d)
    }

    /// Nearest absorbing boundary: distance and whether it is the
    /// top/left side (the side crossed by the matching logical).
    fn boundary_side(&self, s: usize) -> Option<(usize, bool)> {
        if self.is_periodic() {
            return None;
        }
        let st = &self.stabilizers[s];
        let (pos, len) = match st.kind {
            StabKind::Z => (st.row, self.rows),
            StabKind::X => (st.col, self.cols),
        };
        let near = (pos + 1) / 2;
        let far = (len - pos) / 2;
        Some(if near <= far { (near, true) } else { (far, false) })
    }

    /// Data qubits (grid ids) of the chain joining two same-kind
    /// stabilizers: vertical leg along the first column, then a horizontal
    /// leg along the second row.
    pub fn chain_between(&self, a: usize, b: usize) -> Vec<usize> {
        let (sa, sb) = (&self.stabilizers[a], &self.stabilizers[b]);
        let mut out = Vec::new();
        let (dr, up) = self.axis_delta(sa.row, sb.row, self.rows);
        let mut r = sa.row;
        for _ in 0..dr / 2 {
            let mid = self.step(r, up, self.rows);
            out.push(self.grid(mid, sa.col));
            r = self.step(mid, up, self.rows);
        }
        let (dc, right) = self.axis_delta(sa.col, sb.col, self.cols);
        let mut c = sa.col;
        for _ in 0..dc / 2 {
            let mid = self.step(c, right, self.cols);
            out.push(self.grid(sb.row, mid));
            c = self.step(mid, right, self.cols);
        }
        out
    }

    /// Data qubits of the straight chain from a stabilizer to its nearest
    /// absorbing boundary. Empty on the torus.
    pub fn chain_to_boundary(&self, s: usize) -> Vec<usize> {
        let Some((dist, near)) = self.boundary_side(s) else {
            return Vec::new();
        };
        let st = &self.stabilizers[s];
        let mut out = Vec::with_capacity(dist);
        for k in 0..dist {
            let off = 2 * k + 1;
            let q = match (st.kind, near) {
                (StabKind::Z, true) => self.grid(st.row - off, st.col),
                (StabKind::Z, false) => self.grid(st.row + off, st.col),
                (StabKind::X, true) => self.grid(st.row, st.col - off),
                (StabKind::X, false) => self.grid(st.row, st.col + off),
            };
            out.push(q);
        }
        out
    }

    fn step(&self, x: usize, positive: bool, len: usize) -> usize {
        if positive {
            (x + 1) % len
        } else {
            (x + len - 1) % len
        }
    }

    /// Logical supports that detect chains of the given error letter:
    /// X chains are caught by `Z_L` supports, Z chains by `X_L` supports.
    pub fn detecting_logicals(&self, error: StabKind) -> Vec<&[usize]> {
        self.logicals
            .iter()
            .map(|(x, z)| match error {
                StabKind::X => z.as_slice(),
                StabKind::Z => x.as_slice(),
            })
            .collect()
    }
}

/// How X- and Z-type extractions share timesteps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Schedule {
    /// Both species in the same six layers per round. Used for memory
    /// experiments.
    #[default]
    Interleaved,
    /// A Z-type slice then an X-type slice, six layers each, so every
    /// measurement layer reads exactly one species (a quarter of the
    /// qubits).
    AlternatingSlices,
}

/// Meaning of a measurement tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasInfo {
    pub stab: usize,
    pub round: usize,
}

/// A surface-code extraction circuit and its tag table.
#[derive(Debug, Clone)]
pub struct SurfaceCircuit {
    pub circuit: Circuit,
    /// Indexed by tag.
    pub meas: Vec<MeasInfo>,
    /// Total rounds, including a noiseless final round if present.
    pub rounds: usize,
}

impl SurfaceCircuit {
    pub fn tag(&self, round: usize, stab: usize) -> Option<MeasTag> {
        self.meas.iter().position(|m| m.round == round && m.stab == stab).map(|t| t as MeasTag)
    }
}

/// Appends one extraction round over the active stabilizers.
pub fn push_round(
    c: &mut Circuit,
    lat: &SurfaceLattice,
    active: &[bool],
    schedule: Schedule,
    round: usize,
    meas: &mut Vec<MeasInfo>,
) {
    push_round_ordered(c, lat, active, schedule, CNOT_ORDER, round, meas)
}

/// [`push_round`] with an explicit contact order.
pub fn push_round_ordered(
    c: &mut Circuit,
    lat: &SurfaceLattice,
    active: &[bool],
    schedule: Schedule,
    order: CnotOrder,
    round: usize,
    meas: &mut Vec<MeasInfo>,
) {
    let chosen = |kinds: &[StabKind]| -> Vec<usize> {
        (0..lat.stabilizers.len()).filter(|&s| active[s] && kinds.contains(&lat.stabilizers[s].kind)).collect()
    };
    let prep = |s: usize| {
        let st = &lat.stabilizers[s];
        match st.kind {
            StabKind::Z => Element::PrepZ(st.site),
            StabKind::X => Element::PrepX(st.site),
        }
    };
    let cnots = |stabs: &[usize], step: usize| -> Vec<Element> {
        stabs
            .iter()
            .filter_map(|&s| {
                let st = &lat.stabilizers[s];
                let dir = order[(st.kind == StabKind::X) as usize][step];
                st.contacts[dir].map(|q| match st.kind {
                    StabKind::Z => Element::Cnot { control: q, target: st.site },
                    StabKind::X => Element::Cnot { control: st.site, target: q },
                })
            })
            .collect()
    };
    let mut measure = |stabs: &[usize]| -> Vec<Element> {
        stabs
            .iter()
            .map(|&s| {
                let st = &lat.stabilizers[s];
                let tag = meas.len() as MeasTag;
                meas.push(MeasInfo { stab: s, round });
                match st.kind {
                    StabKind::Z => Element::MeasureZ { qubit: st.site, tag },
                    StabKind::X => Element::MeasureX { qubit: st.site, tag },
                }
            })
            .collect()
    };
    let groups: &[&[StabKind]] = match schedule {
        Schedule::Interleaved => &[&[StabKind::Z, StabKind::X]],
        Schedule::AlternatingSlices => &[&[StabKind::Z], &[StabKind::X]],
    };
    for kinds in groups {
        let stabs = chosen(kinds);
        c.push_layer(stabs.iter().map(|&s| prep(s)).collect());
        for step in 0..4 {
            c.push_layer(cnots(&stabs, step));
        }
        c.push_layer(measure(&stabs));
    }
}

fn blank(lat: &SurfaceLattice) -> Circuit {
    let mut c = Circuit::new(lat.num_qubits());
    c.set_data_qubits(lat.data.clone());
    c
}

/// `rounds` noisy extraction rounds with every stabilizer active.
pub fn surface_syndrome_circuit(lat: &SurfaceLattice, rounds: usize, schedule: Schedule) -> SurfaceCircuit {
    syndrome_circuit_ordered(lat, rounds, schedule, CNOT_ORDER)
}

/// [`surface_syndrome_circuit`] with an explicit contact order.
pub fn syndrome_circuit_ordered(lat: &SurfaceLattice, rounds: usize, schedule: Schedule, order: CnotOrder) -> SurfaceCircuit {
    let active = vec![true; lat.stabilizers.len()];
    let mut c = blank(lat);
    let mut meas = Vec::new();
    for r in 0..rounds {
        c.mark_round();
        push_round_ordered(&mut c, lat, &active, schedule, order, r, &mut meas);
    }
    SurfaceCircuit { circuit: c, meas, rounds }
}

/// Memory experiment: `rounds` noisy rounds followed by one noiseless
/// round that reads out the final syndrome.
pub fn surface_memory_circuit(lat: &SurfaceLattice, rounds: usize, schedule: Schedule) -> SurfaceCircuit {
    memory_circuit_ordered(lat, rounds, schedule, CNOT_ORDER)
}

/// [`surface_memory_circuit`] with an explicit contact order.
pub fn memory_circuit_ordered(lat: &SurfaceLattice, rounds: usize, schedule: Schedule, order: CnotOrder) -> SurfaceCircuit {
    let mut sc = syndrome_circuit_ordered(lat, rounds, schedule, order);
    sc.circuit.mark_noiseless();
    let active = vec![true; lat.stabilizers.len()];
    push_round_ordered(&mut sc.circuit, lat, &active, schedule, order, rounds, &mut sc.meas);
    sc.rounds = rounds + 1;
    sc
}

/// Human-readable lattice summary used in diagnostics.
pub fn describe(lat: &SurfaceLattice) -> String {
    format!(
        "{:?}: {}x{} grid, {} data, {} Z checks, {} X checks",
        lat.topology,
        lat.rows,
        lat.cols,
        lat.num_data(),
        lat.stabilizers_of(StabKind::Z).count(),
        lat.stabilizers_of(StabKind::X).count()
    )
}
