//! Detection events, the defect matching graph, exact minimum-weight
//! perfect matching, and logical judging.
//!
//! With a boundary, every event may instead be matched to its own virtual
//! boundary node; virtual nodes pair among themselves at zero cost. That
//! problem is solved as a maximum-weight (not necessarily perfect)
//! matching on the events alone, where an edge is worth the boundary cost
//! it saves.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::blossom::max_weight_matching;
use crate::circuit::MeasTag;
use crate::codes::{StabKind, StabilizerCode, SurfaceCircuit, SurfaceLattice};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Stabilizer outcomes (as flips relative to the ideal run), `rounds x stabs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeRecord {
    pub rounds: usize,
    pub stabs: usize,
    bits: Vec<bool>,
}

impl SyndromeRecord {
    pub fn new(rounds: usize, stabs: usize) -> Self {
        SyndromeRecord { rounds, stabs, bits: vec![false; rounds * stabs] }
    }

    /// Builds the record from a set of flipped measurement tags.
    pub fn from_flips(sc: &SurfaceCircuit, stabs: usize, flipped: &BTreeSet<MeasTag>) -> Self {
        let mut rec = Self::new(sc.rounds, stabs);
        for &t in flipped {
            let m = sc.meas[t as usize];
            rec.set(m.round, m.stab, true);
        }
        rec
    }

    pub fn get(&self, round: usize, stab: usize) -> bool {
        self.bits[round * self.stabs + stab]
    }

    pub fn set(&mut self, round: usize, stab: usize, v: bool) {
        self.bits[round * self.stabs + stab] = v;
    }

    /// Events `(stab, round)` wherever an outcome differs from the previous
    /// round; round 0 compares to the trivial initialization record.
    pub fn detection_events(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rounds {
            for s in 0..self.stabs {
                let prev = r > 0 && self.get(r - 1, s);
                if self.get(r, s) != prev {
                    out.push((s, r));
                }
            }
        }
        out
    }
}

/// Free-function form of [`SyndromeRecord::detection_events`].
pub fn detection_events(s: &SyndromeRecord) -> Vec<(usize, usize)> {
    s.detection_events()
}

/// Complete weighted graph on detection events, with an optional
/// boundary weight per event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingGraph {
    pub weights: Vec<Vec<u32>>,
    pub boundary: Option<Vec<u32>>,
}

impl MatchingGraph {
    pub fn num_events(&self) -> usize {
        self.weights.len()
    }

    /// Node count after boundary augmentation.
    pub fn num_nodes(&self) -> usize {
        if self.boundary.is_some() {
            2 * self.num_events()
        } else {
            self.num_events()
        }
    }

    /// Spacetime graph for events `(stab, round)` of one species.
    pub fn for_events(lat: &SurfaceLattice, events: &[(usize, usize)]) -> Self {
        let weights = events
            .iter()
            .map(|&(a, ra)| {
                events.iter().map(|&(b, rb)| (lat.stab_distance(a, b) + ra.abs_diff(rb)) as u32).collect()
            })
            .collect();
        let boundary = if lat.is_periodic() {
            None
        } else {
            Some(events.iter().map(|&(s, _)| lat.boundary_distance(s).unwrap() as u32).collect())
        };
        MatchingGraph { weights, boundary }
    }
}

/// A perfect matching: event pairs plus events matched to the boundary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub boundary: Vec<usize>,
    pub weight: u64,
}

impl Pairing {
    fn finish(mut self, g: &MatchingGraph) -> Self {
        for p in self.pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        self.pairs.sort_unstable();
        self.boundary.sort_unstable();
        self.weight = self.pairs.iter().map(|&(a, b)| g.weights[a][b] as u64).sum::<u64>()
            + self.boundary.iter().map(|&a| g.boundary.as_ref().unwrap()[a] as u64).sum::<u64>();
        self
    }
}

/// Exact minimum-weight perfect matching.
pub fn mwpm(g: &MatchingGraph) -> Result<Pairing> {
    let k = g.num_events();
    match &g.boundary {
        None => {
            if k % 2 == 1 {
                return Err(Error::OddNodeCount(k));
            }
            if k == 0 {
                return Ok(Pairing::default());
            }
            let top = g.weights.iter().flatten().copied().max().unwrap_or(0) as i64 + 1;
            let mut edges = Vec::with_capacity(k * (k - 1) / 2);
            for a in 0..k {
                for b in a + 1..k {
                    edges.push((a, b, top - g.weights[a][b] as i64));
                }
            }
            let mate = max_weight_matching(k, &edges, true);
            let mut p = Pairing::default();
            for (a, m) in mate.iter().enumerate() {
                match m {
                    Some(b) if a < *b => p.pairs.push((a, *b)),
                    Some(_) => {}
                    None => return Err(Error::NoPerfectMatching),
                }
            }
            Ok(p.finish(g))
        }
        Some(bw) => Ok(match_with_boundary(&g.weights, bw).finish(g)),
    }
}

/// Minimum-cost assignment where each event either pairs with another or
/// goes to the boundary. Only edges that save boundary cost are kept, the
/// graph is split into components, and each component is solved as a
/// maximum-weight matching on savings (scaled, plus one so that ties
/// prefer pairing).
fn match_with_boundary(w: &[Vec<u32>], bw: &[u32]) -> Pairing {
    let k = w.len();
    let mut out = Pairing::default();
    let keep = |a: usize, b: usize| w[a][b] <= bw[a] + bw[b];

    // Connected components over kept edges.
    let mut comp = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for b in 0..k {
                if comp[b] == usize::MAX && keep(a, b) {
                    comp[b] = id;
                    members.push(b);
                }
            }
            i += 1;
        }
        comps.push(members);
    }

    for members in comps {
        match members.len() {
            1 => out.boundary.push(members[0]),
            2 => out.pairs.push((members[0], members[1])),
            n => {
                let scale = n as i64 + 1;
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let (a, b) = (members[i], members[j]);
                        if keep(a, b) {
                            let saving = (bw[a] + bw[b] - w[a][b]) as i64;
                            edges.push((i, j, scale * saving + 1));
                        }
                    }
                }
                let mate = max_weight_matching(n, &edges, false);
                for (i, m) in mate.iter().enumerate() {
                    match m {
                        Some(j) if i < *j => out.pairs.push((members[i], members[*j])),
                        Some(_) => {}
                        None => out.boundary.push(members[i]),
                    }
                }
            }
        }
    }
    out
}

pub const MAX_BRUTE_FORCE_EVENTS: usize = 12;

/// Exhaustive minimum-weight matching. Also returns how many complete
/// matchings were enumerated.
pub fn brute_force_mwpm(g: &MatchingGraph) -> Result<(Pairing, u64)> {
    let k = g.num_events();
    if k > MAX_BRUTE_FORCE_EVENTS {
        return Err(Error::TooManyEvents { n: k, max: MAX_BRUTE_FORCE_EVENTS });
    }
    if g.boundary.is_none() && k % 2 == 1 {
        return Err(Error::OddNodeCount(k));
    }
    let mut st = Brute { g, used: vec![false; k], cur: Pairing::default(), best: None, count: 0 };
    st.recurse(0, 0);
    let best = st.best.ok_or(Error::NoPerfectMatching)?;
    Ok((best.finish(g), st.count))
}

struct Brute<'a> {
    g: &'a MatchingGraph,
    used: Vec<bool>,
    cur: Pairing,
    best: Option<Pairing>,
    count: u64,
}

impl Brute<'_> {
    fn recurse(&mut self, start: usize, weight: u64) {
        let k = self.used.len();
        let Some(a) = (start..k).find(|&i| !self.used[i]) else {
            self.count += 1;
            if self.best.as_ref().is_none_or(|b| weight < b.weight) {
                let mut p = self.cur.clone();
                p.weight = weight;
                self.best = Some(p);
            }
            return;
        };
        self.used[a] = true;
        if let Some(bw) = &self.g.boundary {
            self.cur.boundary.push(a);
            self.recurse(a + 1, weight + bw[a] as u64);
            self.cur.boundary.pop();
        }
        for b in a + 1..k {
            if !self.used[b] {
                self.used[b] = true;
                self.cur.pairs.push((a, b));
                self.recurse(a + 1, weight + self.g.weights[a][b] as u64);
                self.cur.pairs.pop();
                self.used[b] = false;
            }
        }
        self.used[a] = false;
    }
}

/// Logical class of a residual error after correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Outcome {
    Success,
    LogicalX,
    LogicalZ,
    LogicalY,
}

/// Classifies `correction * residual` (both over the code's data qubits).
pub fn judge(correction: &PauliString, residual: &PauliString, code: &StabilizerCode) -> Result<Outcome> {
    if correction.num_qubits() != code.n || residual.num_qubits() != code.n {
        return Err(Error::OffData);
    }
    let mut net = correction.clone();
    net.xor_assign(residual);
    if code.generators.iter().any(|g| g.anticommutes_unchecked(&net)) {
        return Err(Error::ResidualSyndrome);
    }
    let mut x = false;
    let mut z = false;
    for (flip_x, flip_z) in code.logical_flips(&net) {
        x |= flip_x;
        z |= flip_z;
    }
    Ok(match (x, z) {
        (false, false) => Outcome::Success,
        (true, false) => Outcome::LogicalX,
        (false, true) => Outcome::LogicalZ,
        (true, true) => Outcome::LogicalY,
    })
}

/// Restricts a full-register operator to the data qubits, failing if it
/// touches any ancilla.
pub fn data_part(lat: &SurfaceLattice, full: &PauliString) -> Result<PauliString> {
    if full.support().any(|q| lat.data_index(q).is_none()) {
        return Err(Error::OffData);
    }
    Ok(lat.to_data(full))
}

/// Correction operator (over data qubits) implied by a pairing of events
/// `(stab, round)` of one species.
pub fn correction_from_pairing(
    lat: &SurfaceLattice,
    events: &[(usize, usize)],
    pairing: &Pairing,
) -> PauliString {
    let mut out = PauliString::identity(lat.num_data());
    let Some(&(s0, _)) = events.first() else {
        return out;
    };
    let letter = match lat.stabilizers[s0].kind {
        StabKind::Z => Pauli::X,
        StabKind::X => Pauli::Z,
    };
    for &(a, b) in &pairing.pairs {
        out.xor_assign(&lat.data_pauli(lat.chain_between(events[a].0, events[b].0), letter));
    }
    for &a in &pairing.boundary {
        out.xor_assign(&lat.data_pauli(lat.chain_to_boundary(events[a].0), letter));
    }
    out
}

/// Precomputed decoding tables for one lattice.
///
/// Events are numbered `round * stabs + stab`. Logical masks use bit `2i`
/// for an X-type chain crossing `Z_L` of pair `i`, and bit `2i + 1` for a
/// Z-type chain crossing `X_L` of pair `i`.
///
/// Two metrics are available. [`SurfaceDecoder::new`] uses the lattice L1
/// distance (space step = time step = 1). [`SurfaceDecoder::from_edges`]
/// uses unit-weight shortest paths in the graph whose edges are the
/// circuit's single-fault mechanisms, which also contains the diagonal
/// space-time edges produced by faults between two CNOTs.
#[derive(Debug, Clone)]
pub struct SurfaceDecoder {
    stabs: usize,
    species: [Species; 2],
    of_stab: Vec<(usize, usize)>,
    periodic: bool,
}

#[derive(Debug, Clone)]
enum Species {
    Lattice {
        /// Pairwise spatial distance between local stabilizers.
        dist: Vec<Vec<u32>>,
        boundary: Vec<u32>,
        pair_flip: Vec<Vec<u8>>,
        boundary_flip: Vec<u8>,
    },
    Graph(GraphMetric),
}

/// All-pairs shortest paths over space-time nodes `round * k + local`.
#[derive(Debug, Clone)]
struct GraphMetric {
    nodes: usize,
    k: usize,
    dist: Vec<u32>,
    flip: Vec<u8>,
    bdist: Vec<u32>,
    bflip: Vec<u8>,
}

/// Distance assigned to node pairs with no connecting fault path.
pub const UNREACHABLE: u32 = 1 << 20;

/// One single-fault mechanism restricted to a check species: one or two
/// events and the logical bits it flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaultEdge {
    pub a: u32,
    /// `None` for an edge to the boundary.
    pub b: Option<u32>,
    pub logical: u8,
}

impl GraphMetric {
    fn new(nodes: usize, k: usize, edges: &[FaultEdge], to_node: impl Fn(u32) -> usize) -> Self {
        // Node `nodes` is the boundary.
        let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); nodes + 1];
        for e in edges {
            let a = to_node(e.a);
            let b = e.b.map_or(nodes, &to_node);
            if a != b && !adj[a].iter().any(|&(x, _)| x == b) {
                adj[a].push((b, e.logical));
                adj[b].push((a, e.logical));
            }
        }
        let mut dist = vec![UNREACHABLE; nodes * nodes];
        let mut flip = vec![0u8; nodes * nodes];
        let mut bdist = vec![UNREACHABLE; nodes];
        let mut bflip = vec![0u8; nodes];
        let mut d = vec![UNREACHABLE; nodes + 1];
        let mut f = vec![0u8; nodes + 1];
        let mut queue = alloc::collections::VecDeque::new();
        for src in 0..nodes {
            d.fill(UNREACHABLE);
            d[src] = 0;
            f[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                for &(v, m) in &adj[u] {
                    if d[v] == UNREACHABLE {
                        d[v] = d[u] + 1;
                        f[v] = f[u] ^ m;
                        queue.push_back(v);
                    }
                }
            }
            dist[src * nodes..(src + 1) * nodes].copy_from_slice(&d[..nodes]);
            flip[src * nodes..(src + 1) * nodes].copy_from_slice(&f[..nodes]);
            bdist[src] = d[nodes];
            bflip[src] = f[nodes];
        }
        GraphMetric { nodes, k, dist, flip, bdist, bflip }
    }

    fn node(&self, local: usize, round: usize) -> usize {
        round * self.k + local
    }
}

impl SurfaceDecoder {
    pub fn new(lat: &SurfaceLattice) -> Self {
        let mut of_stab = vec![(0, 0); lat.stabilizers.len()];
        let species = [StabKind::Z, StabKind::X].map(|kind| {
            let ids: Vec<usize> = lat.stabilizers_of(kind).collect();
            for (i, &s) in ids.iter().enumerate() {
                of_stab[s] = (species_of(kind), i);
            }
            let error = kind.dual();
            let shift = if error == StabKind::X { 0 } else { 1 };
            let supports = lat.detecting_logicals(error);
            let mask = |chain: &[usize]| -> u8 {
                supports.iter().enumerate().fold(0u8, |m, (i, sup)| {
                    let parity = chain.iter().filter(|q| sup.contains(q)).count() % 2;
                    m | ((parity as u8) << (2 * i + shift))
                })
            };
            Species::Lattice {
                dist: ids.iter().map(|&a| ids.iter().map(|&b| lat.stab_distance(a, b) as u32).collect()).collect(),
                boundary: ids.iter().map(|&a| lat.boundary_distance(a).unwrap_or(0) as u32).collect(),
                pair_flip: ids.iter().map(|&a| ids.iter().map(|&b| mask(&lat.chain_between(a, b))).collect()).collect(),
                boundary_flip: ids.iter().map(|&a| mask(&lat.chain_to_boundary(a))).collect(),
            }
        });
        SurfaceDecoder { stabs: lat.stabilizers.len(), species, of_stab, periodic: lat.is_periodic() }
    }

    /// Fault-graph metric over `rounds` rounds of events. Each edge's events
    /// must belong to one check species; edges may repeat.
    pub fn from_edges(lat: &SurfaceLattice, rounds: usize, edges: &[FaultEdge]) -> Self {
        let stabs = lat.stabilizers.len();
        let mut of_stab = vec![(0, 0); stabs];
        let mut counts = [0usize; 2];
        for (s, st) in lat.stabilizers.iter().enumerate() {
            let sp = species_of(st.kind);
            of_stab[s] = (sp, counts[sp]);
            counts[sp] += 1;
        }
        let mut split: [Vec<FaultEdge>; 2] = [Vec::new(), Vec::new()];
        for e in edges {
            split[of_stab[e.a as usize % stabs].0].push(*e);
        }
        let species = [0, 1].map(|sp| {
            let k = counts[sp];
            split[sp].sort_unstable();
            let to_node = |ev: u32| {
                let ev = ev as usize;
                (ev / stabs) * k + of_stab[ev % stabs].1
            };
            Species::Graph(GraphMetric::new(rounds * k, k, &split[sp], to_node))
        });
        SurfaceDecoder { stabs, species, of_stab, periodic: lat.is_periodic() }
    }

    /// Matches the given events (sorted or not) and returns the logical
    /// mask of the implied correction.
    pub fn decode(&self, events: &[u32]) -> Result<u8> {
        let mut mask = 0u8;
        for (sp, evs) in self.split(events).iter().enumerate() {
            mask ^= self.decode_species(sp, evs)?;
        }
        Ok(mask)
    }

    fn split(&self, events: &[u32]) -> [Vec<(usize, usize)>; 2] {
        let mut split: [Vec<(usize, usize)>; 2] = [Vec::new(), Vec::new()];
        for &e in events {
            let e = e as usize;
            let (sp, local) = self.of_stab[e % self.stabs];
            split[sp].push((local, e / self.stabs));
        }
        split
    }

    /// Matching graph the decoder builds for the events of one species
    /// (0 for Z checks, 1 for X checks), in the order they appear.
    pub fn matching_graph(&self, events: &[u32], species: usize) -> Result<MatchingGraph> {
        self.graph_for(species, &self.split(events)[species])
    }

    fn graph_for(&self, sp: usize, evs: &[(usize, usize)]) -> Result<MatchingGraph> {
        let boundary = |b: &dyn Fn(usize) -> u32| if self.periodic { None } else { Some((0..evs.len()).map(b).collect()) };
        Ok(match &self.species[sp] {
            Species::Lattice { dist, boundary: bd, .. } => MatchingGraph {
                weights: evs
                    .iter()
                    .map(|&(a, ra)| evs.iter().map(|&(b, rb)| dist[a][b] + ra.abs_diff(rb) as u32).collect())
                    .collect(),
                boundary: boundary(&|i| bd[evs[i].0]),
            },
            Species::Graph(m) => {
                let nodes: Vec<usize> = evs.iter().map(|&(l, r)| m.node(l, r)).collect();
                if let Some(&bad) = nodes.iter().find(|&&n| n >= m.nodes) {
                    return Err(Error::EventOutOfRange { event: bad, nodes: m.nodes });
                }
                MatchingGraph {
                    weights: nodes.iter().map(|&a| nodes.iter().map(|&b| m.dist[a * m.nodes + b]).collect()).collect(),
                    boundary: boundary(&|i| m.bdist[nodes[i]]),
                }
            }
        })
    }

    fn decode_species(&self, sp: usize, evs: &[(usize, usize)]) -> Result<u8> {
        if evs.is_empty() {
            return Ok(0);
        }
        let p = mwpm(&self.graph_for(sp, evs)?)?;
        let mut mask = 0u8;
        match &self.species[sp] {
            Species::Lattice { pair_flip, boundary_flip, .. } => {
                for &(a, b) in &p.pairs {
                    mask ^= pair_flip[evs[a].0][evs[b].0];
                }
                for &a in &p.boundary {
                    mask ^= boundary_flip[evs[a].0];
                }
            }
            Species::Graph(m) => {
                let node = |i: usize| m.node(evs[i].0, evs[i].1);
                for &(a, b) in &p.pairs {
                    mask ^= m.flip[node(a) * m.nodes + node(b)];
                }
                for &a in &p.boundary {
                    mask ^= m.bflip[node(a)];
                }
            }
        }
        Ok(mask)
    }
}

fn species_of(kind: StabKind) -> usize {
    match kind {
        StabKind::Z => 0,
        StabKind::X => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{surface_lattice, Topology};

    fn line(points: &[u32]) -> MatchingGraph {
        MatchingGraph {
            weights: points.iter().map(|a| points.iter().map(|b| a.abs_diff(*b)).collect()).collect(),
            boundary: None,
        }
    }

    #[test]
    fn trivial_matchings() {
        let empty = MatchingGraph { weights: vec![], boundary: None };
        assert_eq!(mwpm(&empty).unwrap().weight, 0);
        let g = line(&[0, 1, 10, 11]);
        let p = mwpm(&g).unwrap();
        assert_eq!(p.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(p.weight, 2);
        assert_eq!(brute_force_mwpm(&g).unwrap().0, p);
        assert_eq!(mwpm(&line(&[0, 1, 2])), Err(Error::OddNodeCount(3)));
    }

    #[test]
    fn pair_beats_two_boundaries() {
        let g = MatchingGraph { weights: vec![vec![0, 3], vec![3, 0]], boundary: Some(vec![5, 5]) };
        let p = mwpm(&g).unwrap();
        assert_eq!((p.pairs.clone(), p.weight), (vec![(0, 1)], 3));
    }

    #[test]
    fn enumeration_count() {
        let g = line(&[0, 3, 4, 9, 12, 13, 20, 22]);
        assert_eq!(brute_force_mwpm(&g).unwrap().1, 105);
    }

    #[test]
    fn detection_events_from_a_flip() {
        let mut rec = SyndromeRecord::new(4, 3);
        rec.set(1, 2, true);
        assert_eq!(rec.detection_events(), vec![(2, 1), (2, 2)]);
        assert!(SyndromeRecord::new(3, 3).detection_events().is_empty());
    }

    #[test]
    fn judge_classes() {
        let lat = surface_lattice(Topology::Planar { d: 3 }).unwrap();
        let code = lat.code();
        let id = PauliString::identity(code.n);
        let e = PauliString::single(code.n, 4, Pauli::Y);
        assert_eq!(judge(&e, &e, &code).unwrap(), Outcome::Success);
        let zl = code.z_l().multiply(&code.generators[5]).unwrap();
        assert_eq!(judge(&id, &zl, &code).unwrap(), Outcome::LogicalZ);
        assert_eq!(judge(&id, code.x_l(), &code).unwrap(), Outcome::LogicalX);
        assert_eq!(judge(&id, &e, &code), Err(Error::ResidualSyndrome));
        assert_eq!(judge(&PauliString::identity(3), &id, &code), Err(Error::OffData));
    }
}
