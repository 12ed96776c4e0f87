//! Hole-pair logical qubits and the braiding CNOT.
//!
//! A primal hole is a region of Z-type checks that are no longer measured;
//! a dual hole does the same with X-type checks. A primal pair carries an
//! X chain joining its two holes and a Z loop around its first hole; a
//! dual pair carries a Z chain and an X loop. Deformations are scripts of
//! four primitive steps, and [`track`] replays a script on the stabilizer
//! group, rewriting logical operators with the usual measurement update:
//! a logical that anticommutes with a measured operator is multiplied by a
//! group element that also anticommutes with it. Signs are not tracked.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circuit::{Circuit, Element, MeasTag};
use crate::codes::{push_round, push_round_ordered, MeasInfo, Schedule, StabKind, SurfaceLattice, CNOT_ORDER};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::symplectic::SymplecticBasis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum HoleType {
    /// Z-type checks switched off.
    Primal,
    /// X-type checks switched off.
    Dual,
}

impl HoleType {
    pub fn check_kind(self) -> StabKind {
        match self {
            HoleType::Primal => StabKind::Z,
            HoleType::Dual => StabKind::X,
        }
    }

    /// Basis in which data qubits inside the hole are measured out.
    pub fn measure_basis(self) -> Pauli {
        match self {
            HoleType::Primal => Pauli::X,
            HoleType::Dual => Pauli::Z,
        }
    }

    /// Letter of the chain joining the two holes of a pair.
    pub fn chain_letter(self) -> Pauli {
        self.measure_basis()
    }

    /// Letter of the loop around a hole.
    pub fn loop_letter(self) -> Pauli {
        self.check_kind().letter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Hole {
    pub kind: HoleType,
    /// Switched-off stabilizer indices.
    pub sites: BTreeSet<usize>,
    /// Measured-out data qubits (grid ids).
    pub measured: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HolePair {
    pub kind: HoleType,
    pub holes: [usize; 2],
    /// Chain support (grid ids) joining the holes.
    pub chain: Vec<usize>,
    /// Loop support (grid ids) around the first hole.
    pub ring: Vec<usize>,
}

/// One primitive deformation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "op", rename_all = "snake_case"))]
pub enum Step {
    /// Stop measuring a stabilizer.
    Deactivate { stab: usize },
    /// Measure a data qubit in `basis` (grid id).
    MeasureOut { qubit: usize, basis: Pauli },
    /// Re-prepare a data qubit in `basis`.
    Prepare { qubit: usize, basis: Pauli },
    /// Measure a stabilizer again and keep measuring it.
    Resume { stab: usize },
}

/// A deformation script with the hole geometry after every step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Script {
    pub steps: Vec<Step>,
    /// Per step, the ancilla grid ids of every live hole.
    pub geometry: Vec<Vec<Vec<usize>>>,
}

impl Script {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn extend(&mut self, other: Script) {
        self.steps.extend(other.steps);
        self.geometry.extend(other.geometry);
    }

    /// Renders the script as a circuit: data measure-outs and preparations
    /// become single-qubit elements, a resumed stabilizer one extraction.
    /// Also returns the meaning of every measurement tag.
    pub fn to_circuit(&self, lat: &SurfaceLattice) -> (Circuit, Vec<MeasInfo>) {
        let mut c = Circuit::new(lat.num_qubits());
        c.set_data_qubits(lat.data.clone());
        let mut meas = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Deactivate { .. } => {}
                Step::MeasureOut { qubit, basis } => {
                    let tag = meas.len() as MeasTag;
                    meas.push(MeasInfo { stab: usize::MAX, round: i });
                    c.push_layer(vec![match basis {
                        Pauli::X => Element::MeasureX { qubit, tag },
                        _ => Element::MeasureZ { qubit, tag },
                    }]);
                }
                Step::Prepare { qubit, basis } => {
                    c.push_layer(vec![match basis {
                        Pauli::X => Element::PrepX(qubit),
                        _ => Element::PrepZ(qubit),
                    }]);
                }
                Step::Resume { stab } => {
                    let mut active = vec![false; lat.stabilizers.len()];
                    active[stab] = true;
                    push_round_ordered(&mut c, lat, &active, Schedule::Interleaved, CNOT_ORDER, i, &mut meas);
                }
            }
        }
        (c, meas)
    }
}

/// Holes and hole pairs on a surface-code lattice.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DefectLayout {
    pub lattice: SurfaceLattice,
    holes: Vec<Option<Hole>>,
    pairs: Vec<Option<HolePair>>,
}

impl DefectLayout {
    pub fn new(lattice: SurfaceLattice) -> Self {
        DefectLayout { lattice, holes: Vec::new(), pairs: Vec::new() }
    }

    pub fn hole(&self, id: usize) -> Option<&Hole> {
        self.holes.get(id).and_then(Option::as_ref)
    }

    pub fn pair(&self, id: usize) -> Option<&HolePair> {
        self.pairs.get(id).and_then(Option::as_ref)
    }

    pub fn live_pairs(&self) -> impl Iterator<Item = (usize, &HolePair)> {
        self.pairs.iter().enumerate().filter_map(|(i, p)| p.as_ref().map(|p| (i, p)))
    }

    fn live_holes(&self) -> impl Iterator<Item = (usize, &Hole)> {
        self.holes.iter().enumerate().filter_map(|(i, h)| h.as_ref().map(|h| (i, h)))
    }

    /// Per stabilizer, whether it is still measured.
    pub fn active(&self) -> Vec<bool> {
        let mut a = vec![true; self.lattice.stabilizers.len()];
        for (_, h) in self.live_holes() {
            for &s in &h.sites {
                a[s] = false;
            }
        }
        a
    }

    /// Measured-out data qubits with their basis.
    pub fn measured(&self) -> BTreeMap<usize, Pauli> {
        self.live_holes().flat_map(|(_, h)| h.measured.iter().map(move |&q| (q, h.kind.measure_basis()))).collect()
    }

    /// One syndrome-extraction round over the active stabilizers.
    pub fn round_circuit(&self, schedule: Schedule) -> Circuit {
        let mut c = Circuit::new(self.lattice.num_qubits());
        c.set_data_qubits(self.lattice.data.clone());
        c.mark_round();
        push_round(&mut c, &self.lattice, &self.active(), schedule, 0, &mut Vec::new());
        c
    }

    /// Logical operators of a pair over the data qubits: `(X_L, Z_L)`.
    pub fn logical_ops(&self, pair: usize) -> Result<(PauliString, PauliString)> {
        let p = self.pair(pair).ok_or_else(|| Error::Defect(format!("no pair {pair}")))?;
        let chain = self.lattice.data_pauli(p.chain.iter().copied(), p.kind.chain_letter());
        let ring = self.lattice.data_pauli(p.ring.iter().copied(), p.kind.loop_letter());
        Ok(match p.kind {
            HoleType::Primal => (chain, ring),
            HoleType::Dual => (ring, chain),
        })
    }

    /// Data qubits touched by a set of same-kind stabilizers.
    fn touched(&self, sites: &BTreeSet<usize>) -> BTreeSet<usize> {
        sites.iter().flat_map(|&s| self.lattice.stabilizers[s].support()).collect()
    }

    /// Data qubits all of whose checks of `kind` lie in `sites`.
    fn interior(&self, kind: StabKind, sites: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.touched(sites)
            .into_iter()
            .filter(|&q| self.lattice.stabilizers_of(kind).filter(|&s| self.lattice.stabilizers[s].support().any(|x| x == q)).all(|s| sites.contains(&s)))
            .collect()
    }

    fn connected(&self, sites: &BTreeSet<usize>) -> bool {
        let Some(&first) = sites.iter().next() else { return true };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(s) = stack.pop() {
            let sup: BTreeSet<usize> = self.lattice.stabilizers[s].support().collect();
            for &t in sites {
                if !seen.contains(&t) && self.lattice.stabilizers[t].support().any(|q| sup.contains(&q)) {
                    seen.insert(t);
                    stack.push(t);
                }
            }
        }
        seen.len() == sites.len()
    }

    /// Checks that `sites` can form (part of) a hole of `kind` that keeps
    /// clear of every hole except `ignore`.
    fn check_region(&self, kind: HoleType, sites: &BTreeSet<usize>, ignore: Option<usize>) -> Result<()> {
        for &s in sites {
            let st = self.lattice.stabilizers.get(s).ok_or_else(|| Error::Defect(format!("no stabilizer {s}")))?;
            if st.kind != kind.check_kind() {
                return Err(Error::Defect(format!("stabilizer {s} has the wrong type for a {kind:?} hole")));
            }
            if st.weight() != 4 {
                return Err(Error::Defect(format!("stabilizer {s} sits on the lattice boundary")));
            }
        }
        let near = self.touched(sites);
        for (id, h) in self.live_holes() {
            if Some(id) == ignore {
                continue;
            }
            if h.sites.iter().any(|s| sites.contains(s)) {
                return Err(Error::Defect(format!("region overlaps hole {id}")));
            }
            // Sharing a data qubit, or a neighbouring check of the other type,
            // would merge the holes.
            let theirs = self.touched(&h.sites);
            if theirs.iter().any(|q| near.contains(q)) {
                return Err(Error::Defect(format!("region would merge with hole {id}")));
            }
        }
        Ok(())
    }

    /// Opens two single-stabilizer holes and registers their logical
    /// operators. Sites are stabilizer indices.
    pub fn create_hole_pair(&mut self, site_a: usize, site_b: usize, kind: HoleType) -> Result<usize> {
        if site_a == site_b {
            return Err(Error::Defect("hole sites must differ".into()));
        }
        let a = BTreeSet::from([site_a]);
        let b = BTreeSet::from([site_b]);
        self.check_region(kind, &a, None)?;
        self.check_region(kind, &b, None)?;
        if self.touched(&a).intersection(&self.touched(&b)).next().is_some() {
            return Err(Error::Defect("holes of a pair must not touch".into()));
        }
        let chain = self.lattice.chain_between(site_a, site_b);
        let measured = self.measured();
        if chain.iter().any(|q| measured.contains_key(q)) {
            return Err(Error::Defect("chain crosses a measured-out qubit".into()));
        }
        let ring: Vec<usize> = self.lattice.stabilizers[site_a].support().collect();
        let ha = self.holes.len();
        self.holes.push(Some(Hole { kind, sites: a, measured: BTreeSet::new() }));
        self.holes.push(Some(Hole { kind, sites: b, measured: BTreeSet::new() }));
        self.pairs.push(Some(HolePair { kind, holes: [ha, ha + 1], chain, ring }));
        let id = self.pairs.len() - 1;
        // The chain may only end on the pair's own holes.
        let (xl, zl) = self.logical_ops(id)?;
        let active = self.active();
        for (s, on) in active.iter().enumerate() {
            let sp = self.lattice.stabilizer_pauli(s);
            if *on && (sp.anticommutes_unchecked(&xl) || sp.anticommutes_unchecked(&zl)) {
                self.annihilate_pair(id)?;
                return Err(Error::Defect(format!("logical operators of the new pair anticommute with stabilizer {s}")));
            }
        }
        Ok(id)
    }

    /// Closes both holes of a pair and resumes their stabilizers.
    pub fn annihilate_pair(&mut self, pair: usize) -> Result<()> {
        let p = self.pairs.get_mut(pair).and_then(Option::take).ok_or_else(|| Error::Defect(format!("no pair {pair}")))?;
        for h in p.holes {
            self.holes[h] = None;
        }
        Ok(())
    }

    /// Moves or reshapes a hole to `target` (stabilizer indices): the new
    /// region is switched off and its interior measured out, then the
    /// trailing interior is re-prepared and the trailing checks resumed.
    pub fn deform_hole(&mut self, hole: usize, target: &BTreeSet<usize>) -> Result<Script> {
        let h = self.hole(hole).ok_or_else(|| Error::Defect(format!("no hole {hole}")))?.clone();
        if *target == h.sites {
            return Ok(Script::default());
        }
        if target.is_empty() {
            return Err(Error::Defect("target region is empty".into()));
        }
        self.check_region(h.kind, target, Some(hole))?;
        let union: BTreeSet<usize> = h.sites.union(target).copied().collect();
        if !self.connected(target) || !self.connected(&union) {
            return Err(Error::Defect("target region must be connected and touch the hole".into()));
        }
        let kind = h.kind.check_kind();
        let basis = h.kind.measure_basis();
        let wide = self.interior(kind, &union);
        let end = self.interior(kind, target);
        let mut steps = Vec::new();
        steps.extend(target.difference(&h.sites).map(|&stab| Step::Deactivate { stab }));
        steps.extend(wide.difference(&h.measured).map(|&qubit| Step::MeasureOut { qubit, basis }));
        steps.extend(wide.difference(&end).map(|&qubit| Step::Prepare { qubit, basis }));
        steps.extend(h.sites.difference(target).map(|&stab| Step::Resume { stab }));
        let mut script = Script::default();
        for step in steps {
            self.apply_step(hole, step);
            script.steps.push(step);
            script.geometry.push(self.geometry());
        }
        Ok(script)
    }

    fn apply_step(&mut self, hole: usize, step: Step) {
        let h = self.holes[hole].as_mut().expect("live hole");
        match step {
            Step::Deactivate { stab } => {
                h.sites.insert(stab);
            }
            Step::MeasureOut { qubit, .. } => {
                h.measured.insert(qubit);
            }
            Step::Prepare { qubit, .. } => {
                h.measured.remove(&qubit);
            }
            Step::Resume { stab } => {
                h.sites.remove(&stab);
            }
        }
    }

    /// Ancilla grid ids of every live hole.
    pub fn geometry(&self) -> Vec<Vec<usize>> {
        self.live_holes().map(|(_, h)| h.sites.iter().map(|&s| self.lattice.stabilizers[s].site).collect()).collect()
    }

    /// Braids the first hole of `control` around the first hole of
    /// `target` along an axis-aligned rectangle that keeps one site of
    /// clearance. The control pair must be primal and the target dual.
    /// The layout is left unchanged; the script returns every hole to its
    /// starting place.
    pub fn braid_cnot(&self, control: usize, target: usize) -> Result<Script> {
        let c = self.pair(control).ok_or_else(|| Error::Defect(format!("no pair {control}")))?;
        let t = self.pair(target).ok_or_else(|| Error::Defect(format!("no pair {target}")))?;
        if c.kind != HoleType::Primal || t.kind != HoleType::Dual {
            return Err(Error::Defect("braiding needs a primal control pair and a dual target pair".into()));
        }
        let mover = c.holes[0];
        let start = self.hole(mover).expect("live hole").clone();
        if start.sites.len() != 1 {
            return Err(Error::Defect("only single-site holes are braided".into()));
        }
        let lat = &self.lattice;
        let s0 = *start.sites.iter().next().unwrap();
        let (ar, ac) = (lat.stabilizers[s0].row, lat.stabilizers[s0].col);
        let enclosed = self.hole(t.holes[0]).expect("live hole");
        let rows = enclosed.sites.iter().map(|&s| lat.stabilizers[s].row);
        let cols = enclosed.sites.iter().map(|&s| lat.stabilizers[s].col);
        let (r0, r1) = (rows.clone().min().unwrap(), rows.max().unwrap());
        let (c0, c1) = (cols.clone().min().unwrap(), cols.max().unwrap());
        if r0 < 3 || c0 < 3 {
            return Err(Error::Defect("target hole too close to the lattice edge".into()));
        }
        let (top, bottom) = (ar.min(r0 - 3), ar.max(r1 + 3));
        let (left, right) = (ac.min(c0 - 3), ac.max(c1 + 3));
        if !(ar == top || ar == bottom || ac == left || ac == right) {
            return Err(Error::Defect("moving hole lies inside the braid clearance".into()));
        }
        // Other holes must lie strictly outside the rectangle.
        for (id, h) in self.live_holes() {
            if id == mover || id == t.holes[0] {
                continue;
            }
            for &s in &h.sites {
                let (r, cc) = (lat.stabilizers[s].row, lat.stabilizers[s].col);
                if (top..=bottom).contains(&r) && (left..=right).contains(&cc) {
                    return Err(Error::Defect(format!("braid path meets hole {id}")));
                }
            }
        }
        // Perimeter clockwise from the top-left corner, then rotated to start at the mover.
        let mut ring = Vec::new();
        let mut c_ = left;
        while c_ < right {
            ring.push((top, c_));
            c_ += 2;
        }
        let mut r_ = top;
        while r_ < bottom {
            ring.push((r_, right));
            r_ += 2;
        }
        let mut c_ = right;
        while c_ > left {
            ring.push((bottom, c_));
            c_ -= 2;
        }
        let mut r_ = bottom;
        while r_ > top {
            ring.push((r_, left));
            r_ -= 2;
        }
        let at = ring.iter().position(|&p| p == (ar, ac)).expect("mover on the perimeter");
        ring.rotate_left(at);
        ring.push((ar, ac));
        let mut work = self.clone();
        let mut script = Script::default();
        for &(r, cc) in &ring[1..] {
            let s = lat
                .stabilizer_at(lat.grid(r, cc))
                .ok_or_else(|| Error::Defect(format!("braid path leaves the lattice at ({r}, {cc})")))?;
            script.extend(work.deform_hole(mover, &BTreeSet::from([s]))?);
        }
        Ok(script)
    }
}

/// The stabilizer group and tracked logical operators of a layout.
#[derive(Debug, Clone)]
pub struct Tracker {
    pub stabilizers: Vec<PauliString>,
    pub logicals: Vec<PauliString>,
}

impl Tracker {
    /// Measures `m`, updating the group and the tracked logicals.
    pub fn measure(&mut self, m: &PauliString, what: &str) -> Result<()> {
        match self.stabilizers.iter().position(|g| g.anticommutes_unchecked(m)) {
            Some(i) => {
                let pivot = self.stabilizers[i].clone();
                for (j, g) in self.stabilizers.iter_mut().enumerate() {
                    if j != i && g.anticommutes_unchecked(m) {
                        g.mul_assign_unchecked(&pivot);
                    }
                }
                for l in self.logicals.iter_mut() {
                    if l.anticommutes_unchecked(m) {
                        l.mul_assign_unchecked(&pivot);
                    }
                }
                self.stabilizers[i] = m.clone();
                Ok(())
            }
            None => {
                if self.logicals.iter().any(|l| l.anticommutes_unchecked(m)) {
                    return Err(Error::LogicalMeasured(what.into()));
                }
                if !SymplecticBasis::from_paulis(&self.stabilizers).contains(m) {
                    // Commutes with everything yet is independent: an
                    // untracked logical degree of freedom.
                    return Err(Error::LogicalMeasured(format!("{what} (untracked logical)")));
                }
                Ok(())
            }
        }
    }
}

/// Result of replaying a script.
#[derive(Debug, Clone)]
pub struct Tracked {
    /// Final representatives of `X_0, Z_0, X_1, Z_1, ...` over live pairs.
    pub logicals: Vec<PauliString>,
    pub stabilizers: Vec<PauliString>,
    /// Pair ids in label order.
    pub pairs: Vec<usize>,
}

/// Local group elements used to shorten logical representatives.
fn local_generators(lat: &SurfaceLattice, active: &[bool], measured: &BTreeMap<usize, Pauli>) -> Vec<PauliString> {
    let mut gens: Vec<PauliString> =
        (0..lat.stabilizers.len()).filter(|&s| active[s]).map(|s| lat.stabilizer_pauli(s)).collect();
    gens.extend(measured.iter().map(|(&q, &b)| lat.data_pauli([q], b)));
    gens
}

/// Greedy weight reduction: multiply by any local generator that strictly
/// lowers the weight, scanning in a fixed order, until none does.
pub fn reduce(op: &mut PauliString, gens: &[PauliString]) {
    loop {
        let mut improved = false;
        for g in gens {
            let mut t = op.clone();
            t.mul_assign_unchecked(g);
            if t.weight() < op.weight() {
                *op = t;
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

fn anticommutation_table(ops: &[PauliString]) -> Vec<bool> {
    ops.iter().flat_map(|a| ops.iter().map(move |b| a.anticommutes_unchecked(b))).collect()
}

/// Replays `script` on `layout`, tracking the logical operators of every
/// live pair. After each step the logicals are shortened and checked to
/// commute with all active stabilizers and measured qubits, with their
/// mutual commutation table unchanged.
pub fn track(script: &Script, layout: &DefectLayout) -> Result<Tracked> {
    let lat = &layout.lattice;
    let mut active = layout.active();
    let mut measured = layout.measured();
    let mut pairs = Vec::new();
    let mut logicals = Vec::new();
    for (id, _) in layout.live_pairs() {
        let (x, z) = layout.logical_ops(id)?;
        logicals.push(x);
        logicals.push(z);
        pairs.push(id);
    }
    let table = anticommutation_table(&logicals);
    let mut t = Tracker { stabilizers: local_generators(lat, &active, &measured), logicals };
    for (i, step) in script.steps.iter().enumerate() {
        match *step {
            Step::Deactivate { stab } => active[stab] = false,
            Step::MeasureOut { qubit, basis } => {
                t.measure(&lat.data_pauli([qubit], basis), &format!("step {i}: measure-out of qubit {qubit}"))?;
                measured.insert(qubit, basis);
            }
            Step::Prepare { qubit, basis } => {
                t.measure(&lat.data_pauli([qubit], basis), &format!("step {i}: preparation of qubit {qubit}"))?;
                measured.remove(&qubit);
            }
            Step::Resume { stab } => {
                t.measure(&lat.stabilizer_pauli(stab), &format!("step {i}: resumed stabilizer {stab}"))?;
                active[stab] = true;
            }
        }
        let gens = local_generators(lat, &active, &measured);
        for l in t.logicals.iter_mut() {
            reduce(l, &gens);
        }
        if let Some(g) = gens.iter().find(|g| t.logicals.iter().any(|l| l.anticommutes_unchecked(g))) {
            let on: Vec<String> = g.support().map(|q| format!("{}{q}", g.get(q).as_char())).collect();
            return Err(Error::Defect(format!("step {i}: a logical anticommutes with check {}", on.join(" "))));
        }
        if anticommutation_table(&t.logicals) != table {
            return Err(Error::Defect(format!("step {i}: logical commutation table changed")));
        }
    }
    Ok(Tracked { logicals: t.logicals, stabilizers: t.stabilizers, pairs })
}

/// Induced action on logical Pauli labels, signs ignored. Label `2i` is
/// `X` of the i-th live pair and `2i + 1` its `Z`; an image is a bit mask
/// over labels.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PauliMap {
    pub images: Vec<u64>,
}

impl PauliMap {
    pub fn identity(pairs: usize) -> Self {
        PauliMap { images: (0..2 * pairs).map(|l| 1u64 << l).collect() }
    }

    pub fn pairs(&self) -> usize {
        self.images.len() / 2
    }

    fn apply(&self, mask: u64) -> u64 {
        (0..self.images.len()).filter(|&l| mask >> l & 1 == 1).fold(0, |m, l| m ^ self.images[l])
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PauliMap) -> PauliMap {
        PauliMap { images: self.images.iter().map(|&m| next.apply(m)).collect() }
    }

    /// Two-qubit CNOT table with `control` and `target` label pairs.
    pub fn cnot(pairs: usize, control: usize, target: usize) -> Self {
        let mut m = Self::identity(pairs);
        m.images[2 * control] |= 1 << (2 * target);
        m.images[2 * target + 1] |= 1 << (2 * control + 1);
        m
    }

    /// One line per label, e.g. `X_c -> X_c X_t`, using `names` per pair.
    pub fn rows(&self, names: &[&str]) -> Vec<String> {
        let label = |l: usize| format!("{}_{}", if l % 2 == 0 { 'X' } else { 'Z' }, names[l / 2]);
        (0..self.images.len())
            .map(|l| {
                let img: Vec<String> =
                    (0..self.images.len()).filter(|&k| self.images[l] >> k & 1 == 1).map(label).collect();
                format!("{} -> {}", label(l), if img.is_empty() { String::from("I") } else { img.join(" ") })
            })
            .collect()
    }
}

impl fmt::Display for PauliMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.pairs()).map(|i| format!("{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        for row in self.rows(&names) {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Tracks every logical generator through `script` and reads off the
/// induced map. A tracked operator must equal a product of the starting
/// logical operators up to the final stabilizer group.
pub fn verify_pauli_map(script: &Script, layout: &DefectLayout) -> Result<PauliMap> {
    let tracked = track(script, layout)?;
    let mut start = Vec::new();
    for &id in &tracked.pairs {
        let (x, z) = layout.logical_ops(id)?;
        start.push(x);
        start.push(z);
    }
    let group = SymplecticBasis::from_paulis(&tracked.stabilizers);
    let mut images = Vec::new();
    for (l, op) in tracked.logicals.iter().enumerate() {
        // X_i is detected by Z_i and vice versa.
        let mut mask = 0u64;
        let mut rest = op.clone();
        for k in 0..start.len() {
            if op.anticommutes_unchecked(&start[k ^ 1]) {
                mask |= 1 << k;
                rest.mul_assign_unchecked(&start[k]);
            }
        }
        if !group.contains(&rest) {
            return Err(Error::Defect(format!("image of label {l} leaves the tracked logical algebra")));
        }
        images.push(mask);
    }
    Ok(PauliMap { images })
}

/// Two hole pairs on `planar(11)`, primal control and dual target, spaced
/// so that one target hole can be braided around one control hole.
/// Returns the layout and the control and target pair ids.
pub fn braid_demo() -> Result<(DefectLayout, usize, usize)> {
    let lat = crate::codes::surface_lattice(crate::codes::Topology::Planar { d: 11 })?;
    let site = |r: usize, c: usize| {
        lat.stabilizer_at(lat.grid(r, c)).ok_or_else(|| Error::Defect(format!("no check at ({r}, {c})")))
    };
    let (a, b, d, e) = (site(7, 8)?, site(7, 2)?, site(10, 9)?, site(10, 15)?);
    let mut layout = DefectLayout::new(lat);
    let c = layout.create_hole_pair(a, b, HoleType::Primal)?;
    let t = layout.create_hole_pair(d, e, HoleType::Dual)?;
    Ok((layout, c, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{surface_lattice, Topology};

    fn site(lat: &SurfaceLattice, r: usize, c: usize) -> usize {
        lat.stabilizer_at(lat.grid(r, c)).unwrap()
    }

    fn braid_layout() -> (DefectLayout, usize, usize) {
        braid_demo().unwrap()
    }

    #[test]
    fn smallest_holes_drop_eight_cnots() {
        let lat = surface_lattice(Topology::Planar { d: 7 }).unwrap();
        let before = DefectLayout::new(lat.clone()).round_circuit(Schedule::Interleaved).cnot_count();
        let mut layout = DefectLayout::new(lat.clone());
        layout.create_hole_pair(site(&lat, 5, 4), site(&lat, 5, 8), HoleType::Primal).unwrap();
        assert_eq!(before - layout.round_circuit(Schedule::Interleaved).cnot_count(), 8);
    }

    #[test]
    fn pair_logicals_commute_with_active_checks() {
        let (layout, c, t) = braid_layout();
        let active = layout.active();
        for id in [c, t] {
            let (x, z) = layout.logical_ops(id).unwrap();
            assert!(x.anticommutes_unchecked(&z));
            for (s, on) in active.iter().enumerate() {
                if *on {
                    let sp = layout.lattice.stabilizer_pauli(s);
                    assert!(!sp.anticommutes_unchecked(&x) && !sp.anticommutes_unchecked(&z));
                }
            }
        }
    }

    #[test]
    fn create_then_annihilate_restores_checks() {
        let (mut layout, c, t) = braid_layout();
        layout.annihilate_pair(c).unwrap();
        layout.annihilate_pair(t).unwrap();
        assert!(layout.active().iter().all(|&a| a));
    }

    #[test]
    fn bad_pairs_are_rejected() {
        let lat = surface_lattice(Topology::Planar { d: 7 }).unwrap();
        let mut layout = DefectLayout::new(lat.clone());
        // Neighbouring plaquettes share a data qubit.
        assert!(layout.create_hole_pair(site(&lat, 5, 4), site(&lat, 5, 6), HoleType::Primal).is_err());
        // A star cannot host a primal hole.
        assert!(layout.create_hole_pair(site(&lat, 4, 5), site(&lat, 4, 9), HoleType::Primal).is_err());
        // Boundary checks have weight three.
        assert!(layout.create_hole_pair(site(&lat, 1, 0), site(&lat, 5, 6), HoleType::Primal).is_err());
    }

    #[test]
    fn null_move_is_empty() {
        let (mut layout, c, _) = braid_layout();
        let h = layout.pair(c).unwrap().holes[0];
        let sites = layout.hole(h).unwrap().sites.clone();
        assert!(layout.deform_hole(h, &sites).unwrap().is_empty());
    }

    #[test]
    fn braid_gives_cnot_table() {
        let (layout, c, t) = braid_layout();
        let script = layout.braid_cnot(c, t).unwrap();
        let map = verify_pauli_map(&script, &layout).unwrap();
        assert_eq!(map, PauliMap::cnot(2, 0, 1));
        assert_eq!(map.then(&map), PauliMap::identity(2));
    }

    #[test]
    fn enlarge_then_contract_is_identity() {
        let (mut layout, c, _) = braid_layout();
        let start = layout.clone();
        let h = layout.pair(c).unwrap().holes[0];
        let lat = layout.lattice.clone();
        let (a, n) = (site(&lat, 7, 8), site(&lat, 5, 8));
        let mut script = layout.deform_hole(h, &BTreeSet::from([a, n])).unwrap();
        assert_eq!(layout.hole(h).unwrap().measured.len(), 1);
        script.extend(layout.deform_hole(h, &BTreeSet::from([a])).unwrap());
        assert_eq!(layout.active(), start.active());
        assert_eq!(verify_pauli_map(&script, &start).unwrap(), PauliMap::identity(2));
    }

    #[test]
    fn moved_loop_encircles_the_new_site() {
        let (mut layout, c, _) = braid_layout();
        let start = layout.clone();
        let h = layout.pair(c).unwrap().holes[0];
        let n = site(&layout.lattice, 7, 10);
        let script = layout.deform_hole(h, &BTreeSet::from([n])).unwrap();
        let tracked = track(&script, &start).unwrap();
        let ring = layout.lattice.stabilizer_pauli(n);
        assert!(tracked.logicals[1].same_letters(&ring));
        // The chain now ends on the new site.
        let x = &tracked.logicals[0];
        assert!(x.anticommutes_unchecked(&ring));
    }

    #[test]
    fn closing_a_hole_measures_the_logical() {
        let (layout, _, _) = braid_layout();
        let stab = site(&layout.lattice, 7, 8);
        let script = Script { steps: vec![Step::Resume { stab }], geometry: vec![Vec::new()] };
        assert!(matches!(verify_pauli_map(&script, &layout), Err(Error::LogicalMeasured(_))));
    }

    #[test]
    fn loop_not_enclosing_the_target_is_identity() {
        let (mut layout, c, _) = braid_layout();
        let start = layout.clone();
        let h = layout.pair(c).unwrap().holes[0];
        let mut script = Script::default();
        for (r, cc) in [(5, 8), (5, 10), (7, 10), (7, 8)] {
            let s = site(&layout.lattice, r, cc);
            script.extend(layout.deform_hole(h, &BTreeSet::from([s])).unwrap());
        }
        assert_eq!(verify_pauli_map(&script, &start).unwrap(), PauliMap::identity(2));
    }

    #[test]
    fn braid_with_swapped_roles_is_rejected() {
        let (layout, c, t) = braid_layout();
        assert!(layout.braid_cnot(t, c).is_err());
    }

    #[test]
    fn script_renders_as_circuit() {
        let (layout, c, t) = braid_layout();
        let script = layout.braid_cnot(c, t).unwrap();
        let (circ, _) = script.to_circuit(&layout.lattice);
        assert!(circ.validate_layers() && circ.is_complete());
        assert_eq!(script.geometry.len(), script.len());
    }
}
