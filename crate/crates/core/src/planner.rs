//! Floorplans for tee-coupled qubits on a skew-square tiling.
//!
//! Every lattice site becomes a small square tile rotated by 45 degrees
//! with one physical qubit at each corner (north, east, south, west). A
//! cross-shaped resonator at the tile centre couples the four corner
//! qubits, and each corner couples through one more resonator to the
//! facing corner of the neighbouring tile, or to a stub on the lattice
//! edge. Each qubit therefore sits on exactly two resonators, as in a tee,
//! and reaches four partners.
//!
//! Frequencies are integer classes chosen so that resonators sharing a
//! qubit, or closer than a conflict radius, differ. Classes map to lengths
//! by [`resonator_length_mm`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{SurfaceLattice, Topology};

/// Half-diagonal of a tile, in units of the tile pitch.
pub const TILE_HALF: f64 = 0.25;

/// Corner offsets `(dx, dy)` for north, east, south, west (y grows downward).
pub const CORNERS: [(f64, f64); 4] = [(0.0, -TILE_HALF), (TILE_HALF, 0.0), (0.0, TILE_HALF), (-TILE_HALF, 0.0)];

/// Shortest resonator length and the step between frequency classes.
pub const BASE_LENGTH_MM: f64 = 8.0;
pub const LENGTH_STEP_MM: f64 = 0.25;

/// Length assigned to a frequency class.
pub fn resonator_length_mm(class: u32) -> f64 {
    BASE_LENGTH_MM + LENGTH_STEP_MM * class as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ResonatorKind {
    /// Cross joining the four qubits of one tile.
    Tile,
    /// East corner to the west corner of the next tile.
    Horizontal,
    /// South corner to the north corner of the tile below.
    Vertical,
    /// Dangling resonator on an edge corner, one per missing neighbour.
    Stub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Role {
    /// Holds the surface-code qubit of the tile.
    Code,
    Ancilla,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tile {
    pub id: usize,
    /// Lattice site (grid row, column).
    pub row: usize,
    pub col: usize,
    /// Qubit ids at the north, east, south and west corners.
    pub qubits: [usize; 4],
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Qubit {
    pub id: usize,
    pub tile: usize,
    pub x: f64,
    pub y: f64,
    /// Role in each phase of the four-phase rotation.
    pub roles: [Role; 4],
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Resonator {
    pub id: usize,
    pub kind: ResonatorKind,
    /// Anchor tile: the tile itself, or the west/north tile of a link.
    pub tile: usize,
    pub qubits: Vec<usize>,
    /// Drawn as straight segments `[x0, y0, x1, y1]`.
    pub segments: Vec<[f64; 4]>,
    /// Drawn across the periodic seam of a toric lattice.
    pub wraps: bool,
    pub class: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlanStats {
    pub qubits: usize,
    pub resonators: usize,
    pub tiles: usize,
    pub frequency_classes: usize,
    /// Distinct partner qubits of each qubit through its resonators.
    pub qf: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Floorplan {
    pub rows: usize,
    pub cols: usize,
    pub periodic: bool,
    pub tiles: Vec<Tile>,
    pub qubits: Vec<Qubit>,
    pub resonators: Vec<Resonator>,
    /// Intra-tile swap performed between phase `k` and `k + 1`, as corner
    /// indices: the code qubit moves from corner `k` to corner `k + 1`.
    pub swaps: Vec<[usize; 2]>,
    pub stats: PlanStats,
}

fn corner_xy(row: usize, col: usize, k: usize) -> (f64, f64) {
    (col as f64 + CORNERS[k].0, row as f64 + CORNERS[k].1)
}

/// Builds the tiling for every site of `lat`, without frequencies.
pub fn generate_tiling(lat: &SurfaceLattice) -> Floorplan {
    tiling(lat.rows, lat.cols, matches!(lat.topology, Topology::Toric { .. }))
}

/// Tiling of a `rows x cols` site grid.
pub fn tiling(rows: usize, cols: usize, periodic: bool) -> Floorplan {
    let tile_id = |r: usize, c: usize| r * cols + c;
    let mut tiles = Vec::new();
    let mut qubits = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let id = tile_id(r, c);
            let qs = [0, 1, 2, 3].map(|k| 4 * id + k);
            for (k, &q) in qs.iter().enumerate() {
                let (x, y) = corner_xy(r, c, k);
                let roles = [0, 1, 2, 3].map(|phase| if phase == k { Role::Code } else { Role::Ancilla });
                qubits.push(Qubit { id: q, tile: id, x, y, roles });
            }
            tiles.push(Tile { id, row: r, col: c, qubits: qs });
        }
    }
    let mut resonators = Vec::new();
    let mut push = |kind, tile, qubits: Vec<usize>, segments: Vec<[f64; 4]>, wraps| {
        let id = resonators.len();
        resonators.push(Resonator { id, kind, tile, qubits, segments, wraps, class: None });
    };
    for r in 0..rows {
        for c in 0..cols {
            let id = tile_id(r, c);
            let (cx, cy) = (c as f64, r as f64);
            let arms = (0..4)
                .map(|k| {
                    let (x, y) = corner_xy(r, c, k);
                    [cx, cy, x, y]
                })
                .collect();
            push(ResonatorKind::Tile, id, tiles[id].qubits.to_vec(), arms, false);
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            let id = tile_id(r, c);
            let (ex, ey) = corner_xy(r, c, 1);
            if c + 1 < cols || (periodic && cols > 1) {
                let next = tile_id(r, (c + 1) % cols);
                let wraps = c + 1 == cols;
                let (wx, wy) = if wraps { (ex + 2.0 * TILE_HALF, ey) } else { corner_xy(r, c + 1, 3) };
                push(ResonatorKind::Horizontal, id, vec![tiles[id].qubits[1], tiles[next].qubits[3]], vec![[ex, ey, wx, wy]], wraps);
            }
            let (sx, sy) = corner_xy(r, c, 2);
            if r + 1 < rows || (periodic && rows > 1) {
                let next = tile_id((r + 1) % rows, c);
                let wraps = r + 1 == rows;
                let (nx, ny) = if wraps { (sx, sy + 2.0 * TILE_HALF) } else { corner_xy(r + 1, c, 0) };
                push(ResonatorKind::Vertical, id, vec![tiles[id].qubits[2], tiles[next].qubits[0]], vec![[sx, sy, nx, ny]], wraps);
            }
        }
    }
    if !periodic {
        for t in &tiles {
            let missing = [t.row == 0, t.col + 1 == cols, t.row + 1 == rows, t.col == 0];
            for (k, &m) in missing.iter().enumerate() {
                if m {
                    let (x, y) = corner_xy(t.row, t.col, k);
                    let (dx, dy) = CORNERS[k];
                    push(ResonatorKind::Stub, t.id, vec![t.qubits[k]], vec![[x, y, x + dx, y + dy]], false);
                }
            }
        }
    }
    let mut plan = Floorplan {
        rows,
        cols,
        periodic,
        tiles,
        qubits,
        resonators,
        swaps: vec![[0, 1], [1, 2], [2, 3], [3, 0]],
        stats: PlanStats::default(),
    };
    plan.refresh_stats();
    plan
}

/// Two qubits on one resonator: the smallest coupled system.
pub fn two_qubit_plan() -> Floorplan {
    let qubits = (0..2)
        .map(|i| Qubit { id: i, tile: 0, x: i as f64, y: 0.0, roles: [Role::Code, Role::Ancilla, Role::Code, Role::Ancilla] })
        .collect();
    let resonators = vec![Resonator {
        id: 0,
        kind: ResonatorKind::Horizontal,
        tile: 0,
        qubits: vec![0, 1],
        segments: vec![[0.0, 0.0, 1.0, 0.0]],
        wraps: false,
        class: None,
    }];
    let mut plan = Floorplan {
        rows: 1,
        cols: 1,
        periodic: false,
        tiles: Vec::new(),
        qubits,
        resonators,
        swaps: Vec::new(),
        stats: PlanStats::default(),
    };
    plan.refresh_stats();
    plan
}

impl Floorplan {
    /// Resonator ids per qubit.
    pub fn resonators_of(&self) -> Vec<Vec<usize>> {
        let mut of = vec![Vec::new(); self.qubits.len()];
        for r in &self.resonators {
            for &q in &r.qubits {
                of[q].push(r.id);
            }
        }
        of
    }

    /// Distinct partners of each qubit through its resonators.
    pub fn direct_qf(&self) -> Vec<usize> {
        let of = self.resonators_of();
        (0..self.qubits.len())
            .map(|q| {
                of[q].iter().flat_map(|&r| self.resonators[r].qubits.iter().copied()).filter(|&p| p != q).collect::<BTreeSet<_>>().len()
            })
            .collect()
    }

    /// Number of other tiles each tile reaches through its resonators.
    pub fn tile_qf(&self) -> Vec<usize> {
        let mut reach = vec![BTreeSet::new(); self.tiles.len()];
        for r in &self.resonators {
            let ts: BTreeSet<usize> = r.qubits.iter().map(|&q| self.qubits[q].tile).collect();
            for &a in &ts {
                for &b in &ts {
                    if a != b {
                        reach[a].insert(b);
                    }
                }
            }
        }
        reach.iter().map(BTreeSet::len).collect()
    }

    pub fn refresh_stats(&mut self) {
        let classes: BTreeSet<u32> = self.resonators.iter().filter_map(|r| r.class).collect();
        self.stats = PlanStats {
            qubits: self.qubits.len(),
            resonators: self.resonators.len(),
            tiles: self.tiles.len(),
            frequency_classes: classes.len(),
            qf: self.direct_qf(),
        };
    }

    /// Pairs of drawn segments from different resonators that cross or
    /// touch anywhere except at a shared qubit. Wrapping resonators are
    /// skipped. Segments are swept in order of their left end.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let mut segs: Vec<(f64, f64, usize, [f64; 4])> = Vec::new();
        for r in self.resonators.iter().filter(|r| !r.wraps) {
            for s in &r.segments {
                segs.push((s[0].min(s[2]), s[0].max(s[2]), r.id, *s));
            }
        }
        segs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let shared = |a: usize, b: usize, p: (f64, f64)| {
            self.resonators[a].qubits.iter().any(|q| {
                self.resonators[b].qubits.contains(q) && near(p, (self.qubits[*q].x, self.qubits[*q].y))
            })
        };
        let mut out = BTreeSet::new();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                if segs[j].0 > segs[i].1 + 1e-12 {
                    break;
                }
                let (ra, rb) = (segs[i].2, segs[j].2);
                if ra == rb {
                    continue;
                }
                if let Some(p) = touch_point(&segs[i].3, &segs[j].3) {
                    if !shared(ra, rb, p) {
                        out.insert((ra.min(rb), ra.max(rb)));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Resonator pairs that must get different frequencies: sharing a
    /// qubit, or drawn within `radius` of each other.
    pub fn conflicts(&self, radius: f64) -> Vec<(usize, usize)> {
        let n = self.resonators.len();
        let boxes: Vec<[f64; 4]> = self.resonators.iter().map(|r| bbox(&r.segments)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| boxes[a][0].total_cmp(&boxes[b][0]));
        let mut out = BTreeSet::new();
        for i in 0..n {
            let a = order[i];
            for &b in &order[i + 1..] {
                if boxes[b][0] > boxes[a][2] + radius {
                    break;
                }
                let share = self.resonators[a].qubits.iter().any(|q| self.resonators[b].qubits.contains(q));
                if share || self.resonator_distance(a, b) <= radius + 1e-12 {
                    out.insert((a.min(b), a.max(b)));
                }
            }
        }
        out.into_iter().collect()
    }

    fn resonator_distance(&self, a: usize, b: usize) -> f64 {
        let (ra, rb) = (&self.resonators[a], &self.resonators[b]);
        if ra.wraps || rb.wraps {
            // Seam resonators: measure along the torus by their qubits.
            let mut best = f64::INFINITY;
            for &p in &ra.qubits {
                for &q in &rb.qubits {
                    best = best.min(self.torus_distance(p, q));
                }
            }
            return best;
        }
        let mut best = f64::INFINITY;
        for s in &ra.segments {
            for t in &rb.segments {
                best = best.min(segment_distance(s, t));
            }
        }
        best
    }

    fn torus_distance(&self, p: usize, q: usize) -> f64 {
        let (a, b) = (&self.qubits[p], &self.qubits[q]);
        let wrap = |d: f64, n: usize| {
            let d = libm::fabs(d);
            if self.periodic { d.min(n as f64 - d) } else { d }
        };
        libm::hypot(wrap(a.x - b.x, self.cols), wrap(a.y - b.y, self.rows))
    }

    /// Greedy colouring of the conflict graph. First tries colourings that
    /// repeat with period `P x P` tiles (`P` in 2..=4) by colouring the
    /// quotient graph; falls back to plain greedy in resonator order.
    /// Returns the period used, if any.
    pub fn assign_frequencies(&mut self, radius: f64) -> Option<usize> {
        let conflicts = self.conflicts(radius);
        let mut used = None;
        let periods = if self.tiles.is_empty() { 0..0 } else { 2..5usize };
        for period in periods {
            if self.periodic && (self.rows % period != 0 || self.cols % period != 0) {
                continue;
            }
            let key = |r: &Resonator| -> (ResonatorKind, usize, usize, usize) {
                let t = &self.tiles[r.tile];
                // Stubs are told apart by the corner they hang from.
                let corner = if r.kind == ResonatorKind::Stub {
                    t.qubits.iter().position(|q| *q == r.qubits[0]).unwrap_or(0)
                } else {
                    0
                };
                (r.kind, t.row % period, t.col % period, corner)
            };
            let keys: Vec<_> = self.resonators.iter().map(key).collect();
            let mut ids: BTreeMap<(ResonatorKind, usize, usize, usize), usize> = BTreeMap::new();
            for k in &keys {
                let next = ids.len();
                ids.entry(*k).or_insert(next);
            }
            let class_of: Vec<usize> = keys.iter().map(|k| ids[k]).collect();
            let mut adj = vec![BTreeSet::new(); ids.len()];
            let mut self_loop = false;
            for &(a, b) in &conflicts {
                let (x, y) = (class_of[a], class_of[b]);
                if x == y {
                    self_loop = true;
                    break;
                }
                adj[x].insert(y);
                adj[y].insert(x);
            }
            if self_loop {
                continue;
            }
            let colours = greedy(&adj);
            for r in self.resonators.iter_mut() {
                r.class = Some(colours[class_of[r.id]]);
            }
            used = Some(period);
            break;
        }
        if used.is_none() {
            let mut adj = vec![BTreeSet::new(); self.resonators.len()];
            for &(a, b) in &conflicts {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            let colours = greedy(&adj);
            for r in self.resonators.iter_mut() {
                r.class = Some(colours[r.id]);
            }
        }
        self.refresh_stats();
        used
    }

    /// Conflict edges whose ends share a class.
    pub fn monochromatic(&self, radius: f64) -> Vec<(usize, usize)> {
        self.conflicts(radius)
            .into_iter()
            .filter(|&(a, b)| self.resonators[a].class.is_some() && self.resonators[a].class == self.resonators[b].class)
            .collect()
    }

    /// Smallest translation `(dr, dc)` in tiles, with `dr, dc <= max`, under
    /// which every resonator with an image has the same class as its image.
    /// Both components must be periods on their own axis.
    pub fn detect_period(&self, max: usize) -> Option<(usize, usize)> {
        let index: BTreeMap<(ResonatorKind, usize, Vec<usize>), Option<u32>> = self
            .resonators
            .iter()
            .map(|r| {
                let mut corners: Vec<usize> = r.qubits.iter().map(|&q| q % 4).collect();
                corners.sort_unstable();
                ((r.kind, r.tile, corners), r.class)
            })
            .collect();
        let holds = |dr: usize, dc: usize| {
            self.resonators.iter().all(|r| {
                let t = &self.tiles[r.tile];
                if t.row + dr >= self.rows || t.col + dc >= self.cols {
                    return true;
                }
                let moved = (t.row + dr) * self.cols + t.col + dc;
                let mut corners: Vec<usize> = r.qubits.iter().map(|&q| q % 4).collect();
                corners.sort_unstable();
                match index.get(&(r.kind, moved, corners)) {
                    Some(c) => *c == r.class,
                    None => true,
                }
            })
        };
        if self.tiles.is_empty() {
            return None;
        }
        let dr = (1..=max).find(|&d| d < self.rows && holds(d, 0))?;
        let dc = (1..=max).find(|&d| d < self.cols && holds(0, d))?;
        Some((dr, dc))
    }
}

/// Per-qubit and per-tile fanout, with tiles below four flagged.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FanoutReport {
    pub qubit_qf: Vec<usize>,
    pub tile_qf: Vec<usize>,
    pub flagged_tiles: Vec<usize>,
}

pub fn fanout_report(f: &Floorplan) -> FanoutReport {
    let tile_qf = f.tile_qf();
    let flagged_tiles = tile_qf.iter().enumerate().filter(|(_, &q)| q < 4).map(|(i, _)| i).collect();
    FanoutReport { qubit_qf: f.direct_qf(), tile_qf, flagged_tiles }
}

fn greedy(adj: &[BTreeSet<usize>]) -> Vec<u32> {
    let mut colour = vec![u32::MAX; adj.len()];
    for v in 0..adj.len() {
        let taken: BTreeSet<u32> = adj[v].iter().map(|&u| colour[u]).collect();
        colour[v] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    colour
}

fn bbox(segs: &[[f64; 4]]) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for s in segs {
        b[0] = b[0].min(s[0].min(s[2]));
        b[1] = b[1].min(s[1].min(s[3]));
        b[2] = b[2].max(s[0].max(s[2]));
        b[3] = b[3].max(s[1].max(s[3]));
    }
    b
}

fn near(a: (f64, f64), b: (f64, f64)) -> bool {
    libm::fabs(a.0 - b.0) < 1e-9 && libm::fabs(a.1 - b.1) < 1e-9
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn point_segment_distance(p: (f64, f64), s: &[f64; 4]) -> f64 {
    let (ax, ay, bx, by) = (s[0], s[1], s[2], s[3]);
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - ax) * dx + (p.1 - ay) * dy) / len2).clamp(0.0, 1.0) };
    libm::hypot(p.0 - (ax + t * dx), p.1 - (ay + t * dy))
}

/// Minimum distance between two segments.
pub fn segment_distance(s: &[f64; 4], t: &[f64; 4]) -> f64 {
    if touch_point(s, t).is_some() {
        return 0.0;
    }
    [
        point_segment_distance((s[0], s[1]), t),
        point_segment_distance((s[2], s[3]), t),
        point_segment_distance((t[0], t[1]), s),
        point_segment_distance((t[2], t[3]), s),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// A point shared by two closed segments, if any.
fn touch_point(s: &[f64; 4], t: &[f64; 4]) -> Option<(f64, f64)> {
    let (p1, p2, p3, p4) = ((s[0], s[1]), (s[2], s[3]), (t[0], t[1]), (t[2], t[3]));
    let d1 = cross(p3, p4, p1);
    let d2 = cross(p3, p4, p2);
    let d3 = cross(p1, p2, p3);
    let d4 = cross(p1, p2, p4);
    let eps = 1e-12;
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)) {
        let t = d1 / (d1 - d2);
        return Some((p1.0 + t * (p2.0 - p1.0), p1.1 + t * (p2.1 - p1.1)));
    }
    for (p, seg) in [(p1, t), (p2, t), (p3, s), (p4, s)] {
        if point_segment_distance(p, seg) < 1e-9 {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::surface_lattice;

    #[test]
    fn planar_three_has_four_qubits_per_site() {
        let lat = surface_lattice(Topology::Planar { d: 3 }).unwrap();
        let plan = generate_tiling(&lat);
        assert_eq!(plan.qubits.len(), 4 * 25);
        assert!(plan.resonators_of().iter().all(|r| r.len() == 2));
        assert!(plan.crossings().is_empty());
    }

    #[test]
    fn single_site_is_one_tile_with_stubs() {
        let plan = tiling(1, 1, false);
        assert_eq!(plan.tiles.len(), 1);
        assert_eq!(plan.qubits.len(), 4);
        assert_eq!(plan.resonators.len(), 5);
        assert!(plan.resonators.iter().all(|r| matches!(r.kind, ResonatorKind::Tile | ResonatorKind::Stub)));
    }

    #[test]
    fn fanout_in_bulk_and_on_edges() {
        let lat = surface_lattice(Topology::Planar { d: 5 }).unwrap();
        let rep = fanout_report(&generate_tiling(&lat));
        let cols = lat.cols;
        assert_eq!(rep.tile_qf[4 * cols + 4], 4);
        assert_eq!(rep.tile_qf[0], 2);
        assert_eq!(rep.tile_qf[3], 3);
        assert!(rep.qubit_qf.iter().all(|&q| (3..=4).contains(&q)));
        assert_eq!(fanout_report(&two_qubit_plan()).qubit_qf, vec![1, 1]);
    }

    #[test]
    fn roles_rotate_through_every_corner() {
        let plan = tiling(2, 2, false);
        for t in &plan.tiles {
            for phase in 0..4 {
                let code = t.qubits.iter().filter(|&&q| plan.qubits[q].roles[phase] == Role::Code).count();
                assert_eq!(code, 1);
            }
        }
    }

    #[test]
    fn colouring_is_valid_and_periodic() {
        let lat = surface_lattice(Topology::Planar { d: 5 }).unwrap();
        let mut plan = generate_tiling(&lat);
        let period = plan.assign_frequencies(1.0);
        assert!(period.is_some());
        assert!(plan.monochromatic(1.0).is_empty());
        assert!(plan.stats.frequency_classes <= 8);
        assert!(plan.detect_period(4).is_some());
    }

    #[test]
    fn segment_geometry() {
        assert_eq!(segment_distance(&[0.0, 0.0, 1.0, 0.0], &[0.0, 1.0, 1.0, 1.0]), 1.0);
        assert_eq!(segment_distance(&[0.0, 0.0, 1.0, 1.0], &[0.0, 1.0, 1.0, 0.0]), 0.0);
    }
}
