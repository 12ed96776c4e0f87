use surfacelab_core::circuit::{Circuit, Element};
use surfacelab_core::codes::{surface_lattice, surface_memory_circuit, surface_syndrome_circuit, Schedule, SiteKind, Topology};
use surfacelab_core::noise::{noisy_locations, sample_faults, NoiseModel, Preset};
use surfacelab_core::pauli::Pauli;

#[test]
fn certain_single_qubit_faults_are_uniform() {
    let mut c = Circuit::new(1);
    c.push_layer(vec![Element::H(0)]);
    let m = NoiseModel::new(Preset::CircuitLevel, 1.0).unwrap();
    let shots = 30_000u64;
    let mut counts = [0u64; 4];
    for shot in 0..shots {
        let f = sample_faults(&c, &m, 99, shot).unwrap();
        assert_eq!(f.faults.len(), 1);
        counts[f.faults[0].pauli.get(0) as usize] += 1;
    }
    assert_eq!(counts[Pauli::I as usize], 0);
    let sigma = (shots as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
    for l in [Pauli::X, Pauli::Y, Pauli::Z] {
        assert!((counts[l as usize] as f64 - shots as f64 / 3.0).abs() < 3.0 * sigma, "{counts:?}");
    }
}

#[test]
fn mean_fault_count_matches_p_times_locations() {
    let lat = surface_lattice(Topology::Planar { d: 3 }).unwrap();
    let sc = surface_memory_circuit(&lat, 3, Schedule::default());
    for preset in [Preset::CircuitLevel, Preset::Phenomenological, Preset::CodeCapacity] {
        let p = 0.01;
        let m = NoiseModel::new(preset, p).unwrap();
        let n = noisy_locations(&sc.circuit, &m).unwrap().len() as f64;
        let shots = 20_000u64;
        let total: usize = (0..shots)
            .map(|s| {
                let f = sample_faults(&sc.circuit, &m, 3, s).unwrap();
                f.faults.len() + f.measurement_flips.len()
            })
            .sum();
        let mean = total as f64 / shots as f64;
        let sigma = (n * p * (1.0 - p) / shots as f64).sqrt();
        assert!((mean - n * p).abs() < 4.0 * sigma, "{preset:?}: {mean} vs {}", n * p);
    }
}

#[test]
fn sampling_is_a_function_of_seed_and_shot() {
    let lat = surface_lattice(Topology::Planar { d: 3 }).unwrap();
    let sc = surface_memory_circuit(&lat, 2, Schedule::default());
    let m = NoiseModel::new(Preset::CircuitLevel, 0.05).unwrap();
    let forward: Vec<_> = (0..50).map(|s| sample_faults(&sc.circuit, &m, 8, s).unwrap()).collect();
    for s in (0..50).rev() {
        assert_eq!(sample_faults(&sc.circuit, &m, 8, s).unwrap(), forward[s as usize]);
    }
}

#[test]
fn alternating_slices_measure_a_quarter_and_never_data() {
    for l in [2, 3, 4, 6] {
        let lat = surface_lattice(Topology::Toric { l }).unwrap();
        let sc = surface_syndrome_circuit(&lat, 2, Schedule::AlternatingSlices);
        let mut slices = 0;
        for layer in sc.circuit.layers() {
            let measured: Vec<usize> = layer
                .elements
                .iter()
                .filter(|e| e.measurement_tag().is_some())
                .flat_map(|e| e.qubit_list())
                .collect();
            if !measured.is_empty() {
                slices += 1;
                assert_eq!(4 * measured.len(), lat.num_qubits(), "l={l}");
                assert!(measured.iter().all(|&q| lat.site_kind(q) != SiteKind::Data));
            }
        }
        assert_eq!(slices, 4);
    }
}
