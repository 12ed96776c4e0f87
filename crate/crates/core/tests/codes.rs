use surfacelab_core::codes::{
    malignant_single_faults, measured_syndrome, min_distance_bruteforce, steane7, surface_lattice, LookupDecoder, Topology,
};
use surfacelab_core::decoder::{judge, Outcome};
use surfacelab_core::pauli::{Pauli, PauliString};

#[test]
fn steane_circuit_reads_and_fixes_every_single_error() {
    let b = steane7();
    let dec = LookupDecoder::single_errors(&b.code);
    let mut seen = std::collections::BTreeSet::new();
    for q in 0..7 {
        for l in Pauli::NON_IDENTITY {
            let e = PauliString::single(7, q, l);
            let s = measured_syndrome(&b, &e).unwrap();
            assert_eq!(s, b.code.syndrome(&e), "{e}");
            assert!(s.iter().any(|&x| x));
            assert!(seen.insert(s.clone()));
            let fix = dec.correction(&s).unwrap();
            assert_eq!(judge(&fix, &e, &b.code).unwrap(), Outcome::Success);
        }
    }
    assert_eq!(seen.len(), 21);
}

#[test]
fn bare_ancilla_extraction_is_not_fault_tolerant() {
    let b = steane7();
    let bad = malignant_single_faults(&b).unwrap();
    assert!(!bad.is_empty());
    for f in &bad {
        assert!(f.data_error.weight() >= 2);
        assert_ne!(f.outcome, Outcome::Success);
    }
}

#[test]
fn distance_three_patch_has_thirteen_sites() {
    let lat = surface_lattice(Topology::Planar { d: 3 }).unwrap();
    assert_eq!(lat.num_data(), 13);
    assert_eq!(min_distance_bruteforce(&lat.code()).unwrap(), 3);
}
