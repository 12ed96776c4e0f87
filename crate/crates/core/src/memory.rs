//! Surface-code memory experiments.
//!
//! Faults act linearly on the Pauli frame, so the detection events and
//! logical flips of a shot are the XOR of per-fault contributions. Those
//! contributions are tabulated once per circuit by propagating each
//! single-qubit X and Z from its location; a shot then costs only its
//! number of faults plus decoding. The same table supplies the decoder's
//! matching graph: every fault that lights one or two events of a check
//! species is an edge.

use alloc::vec::Vec;

use crate::circuit::{propagate_from, MeasTag};
use crate::codes::{surface_memory_circuit, Schedule, SurfaceCircuit, SurfaceLattice};
use crate::decoder::{FaultEdge, SurfaceDecoder};
use crate::error::Result;
use crate::noise::{outcome_letters, Channel, FaultSampler, Hit, NoiseModel};
use crate::pauli::{Pauli, PauliString};

/// Detection events and logical mask caused by one fault outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Effect {
    pub events: Vec<u32>,
    pub logical: u8,
}

impl Effect {
    fn xor(&self, other: &Effect) -> Effect {
        let mut events: Vec<u32> = self.events.iter().chain(&other.events).copied().collect();
        cancel_pairs(&mut events);
        Effect { events, logical: self.logical ^ other.logical }
    }
}

/// Sorts and removes elements that occur an even number of times.
pub fn cancel_pairs(v: &mut Vec<u32>) {
    v.sort_unstable();
    let mut out = 0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            v[out] = v[i];
            out += 1;
        }
        i = j;
    }
    v.truncate(out);
}

/// A memory experiment ready to run shots.
#[derive(Debug, Clone)]
pub struct MemoryExperiment {
    pub lattice: SurfaceLattice,
    pub circuit: SurfaceCircuit,
    pub sampler: FaultSampler,
    decoder: SurfaceDecoder,
    /// Per noisy location, the first index into `effects`.
    offsets: Vec<u32>,
    effects: Vec<Effect>,
}

/// Result of one shot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotOutcome {
    pub events: Vec<u32>,
    /// Logical mask of the actual residual error.
    pub actual: u8,
    /// Logical mask of the decoder's correction.
    pub predicted: u8,
}

impl ShotOutcome {
    pub fn failed(&self) -> bool {
        self.actual != self.predicted
    }
}

/// Reusable per-thread buffers.
#[derive(Debug, Default)]
pub struct Scratch {
    hits: Vec<Hit>,
    events: Vec<u32>,
}

impl MemoryExperiment {
    pub fn new(lattice: &SurfaceLattice, rounds: usize, schedule: Schedule, model: &NoiseModel) -> Result<Self> {
        Self::from_circuit(lattice, surface_memory_circuit(lattice, rounds, schedule), model)
    }

    /// Uses a prebuilt memory circuit for `lattice`.
    pub fn from_circuit(lattice: &SurfaceLattice, circuit: SurfaceCircuit, model: &NoiseModel) -> Result<Self> {
        let sampler = FaultSampler::new(&circuit.circuit, model)?;
        let mut exp = MemoryExperiment {
            lattice: lattice.clone(),
            circuit,
            sampler,
            decoder: SurfaceDecoder::new(lattice),
            offsets: Vec::new(),
            effects: Vec::new(),
        };
        exp.build_effects();
        exp.decoder = SurfaceDecoder::from_edges(lattice, exp.circuit.rounds, &exp.fault_edges());
        Ok(exp)
    }

    fn stabs(&self) -> usize {
        self.lattice.stabilizers.len()
    }

    /// Event ids touched by a flip of measurement `tag`.
    fn tag_events(&self, tag: MeasTag, out: &mut Vec<u32>) {
        let m = self.circuit.meas[tag as usize];
        let id = (m.round * self.stabs() + m.stab) as u32;
        out.push(id);
        if m.round + 1 < self.circuit.rounds {
            out.push(id + self.stabs() as u32);
        }
    }

    /// Logical mask of a residual frame on the full register.
    pub fn logical_mask(&self, residual: &PauliString) -> u8 {
        let mut mask = 0u8;
        for (i, (xs, zs)) in self.lattice.logicals.iter().enumerate() {
            let x_hits = zs.iter().filter(|&&q| residual.x_bit(q)).count() % 2;
            let z_hits = xs.iter().filter(|&&q| residual.z_bit(q)).count() % 2;
            mask |= ((x_hits as u8) << (2 * i)) | ((z_hits as u8) << (2 * i + 1));
        }
        mask
    }

    fn propagate(&self, layer: usize, element: usize, q: usize, letter: Pauli) -> Effect {
        let c = &self.circuit.circuit;
        let mut flips = Vec::new();
        let residual = propagate_from(c, layer, element, PauliString::single(c.num_qubits(), q, letter), &mut flips);
        let mut events = Vec::new();
        for t in flips {
            self.tag_events(t, &mut events);
        }
        cancel_pairs(&mut events);
        Effect { events, logical: self.logical_mask(&residual) }
    }

    fn build_effects(&mut self) {
        let c = &self.circuit.circuit;
        let mut offsets = Vec::with_capacity(self.sampler.locations.len());
        let mut effects = Vec::new();
        for nl in &self.sampler.locations {
            offsets.push(effects.len() as u32);
            let loc = nl.location;
            let e = c.element(&loc);
            if nl.channel == Channel::Flip {
                let mut events = Vec::new();
                self.tag_events(e.measurement_tag().unwrap(), &mut events);
                effects.push(Effect { events, logical: 0 });
                continue;
            }
            let qs = e.qubit_list();
            // Basis effects: X and Z on each qubit of the element.
            let basis: Vec<[Effect; 2]> = qs
                .iter()
                .map(|&q| {
                    [self.propagate(loc.layer, loc.element, q, Pauli::X), self.propagate(loc.layer, loc.element, q, Pauli::Z)]
                })
                .collect();
            let of = |slot: usize, letter: Pauli| -> Effect {
                let (x, z) = letter.bits();
                let mut eff = Effect::default();
                if x {
                    eff = eff.xor(&basis[slot][0]);
                }
                if z {
                    eff = eff.xor(&basis[slot][1]);
                }
                eff
            };
            for o in 0..nl.channel.num_outcomes() {
                let [a, b] = outcome_letters(nl.channel, o);
                let mut eff = of(0, a);
                if qs.len() > 1 {
                    eff = eff.xor(&of(1, b));
                }
                effects.push(eff);
            }
        }
        self.offsets = offsets;
        self.effects = effects;
    }

    /// Decoding-graph edges: each tabulated effect split by check species,
    /// kept where a species sees one or two events. Effects with more
    /// events in a species are sums of such edges.
    pub fn fault_edges(&self) -> Vec<FaultEdge> {
        let stabs = self.stabs();
        let is_x_check = |e: u32| self.lattice.stabilizers[e as usize % stabs].kind == crate::codes::StabKind::X;
        let mut edges = Vec::new();
        for eff in &self.effects {
            for x_check in [false, true] {
                // X-type checks see Z errors, which own the odd logical bits.
                let bits = if x_check { 0xAA } else { 0x55 };
                let evs: Vec<u32> = eff.events.iter().copied().filter(|&e| is_x_check(e) == x_check).collect();
                match evs[..] {
                    [a] => edges.push(FaultEdge { a, b: None, logical: eff.logical & bits }),
                    [a, b] => edges.push(FaultEdge { a, b: Some(b), logical: eff.logical & bits }),
                    _ => {}
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Combined effect of a set of firings.
    pub fn effect_of(&self, hits: &[Hit], events: &mut Vec<u32>) -> u8 {
        events.clear();
        let mut logical = 0u8;
        for h in hits {
            let eff = &self.effects[(self.offsets[h.slot as usize] + h.outcome as u32) as usize];
            events.extend_from_slice(&eff.events);
            logical ^= eff.logical;
        }
        cancel_pairs(events);
        logical
    }

    /// Decodes a given set of firings.
    pub fn run_hits(&self, hits: &[Hit]) -> Result<ShotOutcome> {
        let mut events = Vec::new();
        let actual = self.effect_of(hits, &mut events);
        let predicted = self.decoder.decode(&events)?;
        Ok(ShotOutcome { events, actual, predicted })
    }

    /// Samples and decodes one shot; `true` on logical failure.
    pub fn shot_failed(&self, master_seed: u64, shot: u64, scratch: &mut Scratch) -> Result<bool> {
        scratch.hits.clear();
        self.sampler.sample_into(&mut crate::noise::shot_rng(master_seed, shot), &mut scratch.hits);
        if scratch.hits.is_empty() {
            return Ok(false);
        }
        let actual = self.effect_of(&scratch.hits, &mut scratch.events);
        let predicted = self.decoder.decode(&scratch.events)?;
        Ok(actual != predicted)
    }

    /// Counts failures over shots `[start, start + count)`.
    pub fn run_range(&self, master_seed: u64, start: u64, count: u64) -> Result<u64> {
        let mut scratch = Scratch::default();
        let mut failures = 0;
        for shot in start..start + count {
            failures += self.shot_failed(master_seed, shot, &mut scratch)? as u64;
        }
        Ok(failures)
    }

    pub fn decoder(&self) -> &SurfaceDecoder {
        &self.decoder
    }
}
