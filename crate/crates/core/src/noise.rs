//! Stochastic Pauli fault models over circuit locations.
//!
//! Every noisy location fires independently with the model's `p`. Firing
//! locations are found by geometric skipping, so a shot costs time
//! proportional to its number of faults rather than to circuit size.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::circuit::{Circuit, Element, Fault, FaultLocation, FaultSet, LocationKind, MeasTag};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Preset {
    CodeCapacity,
    Phenomenological,
    CircuitLevel,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::CodeCapacity => "code_capacity",
            Preset::Phenomenological => "phenomenological",
            Preset::CircuitLevel => "circuit_level",
        }
    }
}

/// What a firing location does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Uniform over X, Y, Z on one qubit.
    Depolarize1,
    /// Uniform over the 15 non-identity two-qubit Paulis.
    Depolarize2,
    /// Classical flip of a measurement result.
    Flip,
}

impl Channel {
    pub fn num_outcomes(self) -> usize {
        match self {
            Channel::Depolarize1 => 3,
            Channel::Depolarize2 => 15,
            Channel::Flip => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub preset: Preset,
    pub p: f64,
}

impl NoiseModel {
    pub fn new(preset: Preset, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(NoiseModel { preset, p })
    }

    /// Channel for a location kind in the bulk of a noisy round. Code
    /// capacity and phenomenological idles only fire on data qubits in the
    /// first layer of a round; see [`noisy_locations`].
    pub fn channel(&self, kind: LocationKind) -> Option<Channel> {
        match (self.preset, kind) {
            (_, LocationKind::Idle) => Some(Channel::Depolarize1),
            (Preset::CircuitLevel, LocationKind::Prep | LocationKind::Gate1) => Some(Channel::Depolarize1),
            (Preset::CircuitLevel, LocationKind::Gate2) => Some(Channel::Depolarize2),
            (Preset::CircuitLevel | Preset::Phenomenological, LocationKind::Measure) => Some(Channel::Flip),
            _ => None,
        }
    }
}

/// One row of the channel table.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRow {
    pub kind: LocationKind,
    /// `(outcome label, probability)`; empty when the location is perfect.
    pub entries: Vec<(String, f64)>,
}

impl ChannelRow {
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }
}

/// Outcome probabilities per location kind.
pub fn channel_table(m: &NoiseModel) -> Vec<ChannelRow> {
    LocationKind::ALL
        .iter()
        .map(|&kind| {
            let entries = match m.channel(kind) {
                None => Vec::new(),
                Some(Channel::Flip) => alloc::vec![(String::from("flip"), m.p)],
                Some(ch) => (0..ch.num_outcomes())
                    .map(|o| (outcome_label(ch, o), m.p / ch.num_outcomes() as f64))
                    .collect(),
            };
            ChannelRow { kind, entries }
        })
        .collect()
}

/// Plain-text rendering of [`channel_table`].
pub fn format_channel_table(m: &NoiseModel) -> String {
    let mut out = format!("{} p={}\n", m.preset.name(), m.p);
    for row in channel_table(m) {
        out.push_str(row.kind.name());
        if row.entries.is_empty() {
            out.push_str(": perfect");
        }
        for (label, p) in &row.entries {
            out.push_str(&format!(" {label}:{p:.6e}"));
        }
        out.push('\n');
    }
    out
}

const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Letters of outcome `o` of a channel: one letter, or a pair for two-qubit
/// channels (outcome `o` is the pair index `o + 1` in base 4).
pub fn outcome_letters(ch: Channel, o: usize) -> [Pauli; 2] {
    match ch {
        Channel::Depolarize1 => [LETTERS[o + 1], Pauli::I],
        Channel::Depolarize2 => [LETTERS[(o + 1) / 4], LETTERS[(o + 1) % 4]],
        Channel::Flip => [Pauli::I, Pauli::I],
    }
}

fn outcome_label(ch: Channel, o: usize) -> String {
    let [a, b] = outcome_letters(ch, o);
    match ch {
        Channel::Depolarize2 => format!("{}{}", a.as_char(), b.as_char()),
        _ => format!("{}", a.as_char()),
    }
}

/// A location that may fire, with its channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoisyLocation {
    pub location: FaultLocation,
    pub channel: Channel,
}

/// Locations that carry noise under `m`, in location order.
pub fn noisy_locations(c: &Circuit, m: &NoiseModel) -> Result<Vec<NoisyLocation>> {
    let restricted = m.preset != Preset::CircuitLevel;
    if restricted && c.round_starts().is_empty() {
        return Err(Error::MissingRoundMetadata);
    }
    let mut data = alloc::vec![false; c.num_qubits()];
    for &q in c.data_qubits() {
        data[q] = true;
    }
    let mut out = Vec::new();
    for loc in c.enumerate_locations() {
        if !c.is_noisy_layer(loc.layer) {
            continue;
        }
        let Some(channel) = m.channel(loc.kind) else { continue };
        if restricted && loc.kind == LocationKind::Idle {
            let Element::Idle(q) = *c.element(&loc) else { unreachable!() };
            if !data[q] || !c.round_starts().contains(&loc.layer) {
                continue;
            }
        }
        out.push(NoisyLocation { location: loc, channel });
    }
    Ok(out)
}

/// Deterministic per-shot generator: the master seed fixes the key, the
/// shot index selects an independent stream.
pub fn shot_rng(master_seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(shot);
    rng
}

/// Uniform draw in (0, 1].
fn unit(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A firing: index into the noisy-location list and outcome index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hit {
    pub slot: u32,
    pub outcome: u8,
}

/// Precomputed sampler over a circuit's noisy locations.
#[derive(Debug, Clone)]
pub struct FaultSampler {
    pub locations: Vec<NoisyLocation>,
    p: f64,
    log_q: f64,
}

impl FaultSampler {
    pub fn new(c: &Circuit, m: &NoiseModel) -> Result<Self> {
        NoiseModel::new(m.preset, m.p)?;
        Ok(FaultSampler { locations: noisy_locations(c, m)?, p: m.p, log_q: libm::log1p(-m.p) })
    }

    /// Appends the firings of one shot to `hits`.
    pub fn sample_into(&self, rng: &mut impl RngCore, hits: &mut Vec<Hit>) {
        let n = self.locations.len();
        if self.p <= 0.0 || n == 0 {
            return;
        }
        let mut i = 0usize;
        loop {
            if self.p < 1.0 {
                let gap = libm::floor(libm::log(unit(rng)) / self.log_q);
                if gap >= (n - i) as f64 {
                    return;
                }
                i += gap as usize;
            }
            if i >= n {
                return;
            }
            let k = self.locations[i].channel.num_outcomes() as u64;
            let outcome = if k == 1 { 0 } else { (rng.next_u64() % k) as u8 };
            hits.push(Hit { slot: i as u32, outcome });
            i += 1;
        }
    }

    pub fn sample(&self, master_seed: u64, shot: u64) -> Vec<Hit> {
        let mut hits = Vec::new();
        self.sample_into(&mut shot_rng(master_seed, shot), &mut hits);
        hits
    }

    /// Materializes firings as explicit faults.
    pub fn to_fault_set(&self, c: &Circuit, hits: &[Hit]) -> FaultSet {
        let mut fs = FaultSet::default();
        for h in hits {
            let nl = self.locations[h.slot as usize];
            let e = c.element(&nl.location);
            match (nl.channel, e) {
                (Channel::Flip, _) => {
                    let tag: MeasTag = e.measurement_tag().expect("flip on a non-measurement");
                    fs.measurement_flips.push(tag);
                }
                (ch, _) => {
                    let [a, b] = outcome_letters(ch, h.outcome as usize);
                    let qs = e.qubit_list();
                    let mut p = PauliString::identity(c.num_qubits());
                    p.set(qs[0], a);
                    if qs.len() > 1 {
                        p.set(qs[1], b);
                    }
                    fs.faults.push(Fault { location: nl.location.index, pauli: p });
                }
            }
        }
        fs
    }
}

/// Samples one shot's faults; a pure function of `(master_seed, shot)`.
pub fn sample_faults(c: &Circuit, m: &NoiseModel, master_seed: u64, shot: u64) -> Result<FaultSet> {
    let s = FaultSampler::new(c, m)?;
    Ok(s.to_fault_set(c, &s.sample(master_seed, shot)))
}
