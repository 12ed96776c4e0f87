//! Production matching weight against exhaustive enumeration.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use surfacelab_core::codes::{surface_lattice, Schedule, StabKind, Topology};
use surfacelab_core::decoder::{brute_force_mwpm, mwpm, MatchingGraph};
use surfacelab_core::memory::MemoryExperiment;
use surfacelab_core::noise::{NoiseModel, Preset};

fn pick(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    while out.len() < k.min(n) {
        let v = (rng.next_u64() % n as u64) as usize;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[test]
fn lattice_metric_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for d in [3, 5] {
        let lat = surface_lattice(Topology::Planar { d }).unwrap();
        for i in 0..500 {
            let kind = if i % 2 == 0 { StabKind::Z } else { StabKind::X };
            let ids: Vec<usize> = lat.stabilizers_of(kind).collect();
            let rounds = d + 1;
            let k = (rng.next_u64() % 11) as usize;
            let events: Vec<(usize, usize)> =
                pick(&mut rng, ids.len() * rounds, k).into_iter().map(|e| (ids[e % ids.len()], e / ids.len())).collect();
            let g = MatchingGraph::for_events(&lat, &events);
            let fast = mwpm(&g).unwrap();
            let (slow, _) = brute_force_mwpm(&g).unwrap();
            assert_eq!(fast.weight, slow.weight, "d={d} events={events:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 1000);
}

#[test]
fn fault_graph_metric_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let model = NoiseModel::new(Preset::CircuitLevel, 0.001).unwrap();
    for d in [3, 5] {
        let lat = surface_lattice(Topology::Planar { d }).unwrap();
        let exp = MemoryExperiment::new(&lat, d, Schedule::default(), &model).unwrap();
        let stabs = lat.stabilizers.len();
        let total = stabs * (d + 1);
        for i in 0..500 {
            let k = (rng.next_u64() % 11) as usize;
            let events: Vec<u32> = pick(&mut rng, total, k).into_iter().map(|e| e as u32).collect();
            let g = exp.decoder().matching_graph(&events, i % 2).unwrap();
            let fast = mwpm(&g).unwrap();
            let (slow, _) = brute_force_mwpm(&g).unwrap();
            assert_eq!(fast.weight, slow.weight, "d={d} events={events:?}");
        }
    }
}

#[test]
fn periodic_graphs_need_even_event_counts() {
    let lat = surface_lattice(Topology::Toric { l: 4 }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ids: Vec<usize> = lat.stabilizers_of(StabKind::Z).collect();
    for k in [2usize, 4, 6, 8, 10] {
        let events: Vec<(usize, usize)> = pick(&mut rng, ids.len() * 3, k).into_iter().map(|e| (ids[e % ids.len()], e / ids.len())).collect();
        let g = MatchingGraph::for_events(&lat, &events);
        assert_eq!(mwpm(&g).unwrap().weight, brute_force_mwpm(&g).unwrap().0.weight);
    }
}
