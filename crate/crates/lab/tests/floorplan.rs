use std::collections::BTreeSet;

use surfacelab::floorplan::{plan, FloorplanDoc, FLOORPLAN_SCHEMA};
use surfacelab::core::codes::Topology;
use surfacelab::core::planner::{two_qubit_plan, ResonatorKind};

fn validator() -> jsonschema::Validator {
    let schema: serde_json::Value = serde_json::from_str(FLOORPLAN_SCHEMA).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn distance_three_export_matches_the_schema() {
    let doc = plan(Topology::Planar { d: 3 }, 1.0).unwrap();
    let value: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let mut broken = value.clone();
    broken["floorplan"]["qubits"][0]["roles"] = serde_json::json!(["code"]);
    assert!(!v.is_valid(&broken));
}

#[test]
fn export_import_export_is_byte_identical() {
    for topology in [Topology::Planar { d: 3 }, Topology::Toric { l: 4 }] {
        let first = plan(topology, 1.0).unwrap().to_json();
        let again = FloorplanDoc::from_json(&first).unwrap().to_json();
        assert_eq!(first, again);
    }
}

#[test]
fn stats_match_an_independent_recount() {
    let doc = plan(Topology::Planar { d: 5 }, 1.0).unwrap();
    let f = &doc.floorplan;
    let classes: BTreeSet<u32> = f.resonators.iter().map(|r| r.class.unwrap()).collect();
    assert_eq!(f.stats.qubits, f.qubits.len());
    assert_eq!(f.stats.resonators, f.resonators.len());
    assert_eq!(f.stats.frequency_classes, classes.len());
    // Partners by walking resonator membership from each qubit.
    for q in &f.qubits {
        let mut partners: BTreeSet<usize> = BTreeSet::new();
        let mut degree = 0;
        for r in &f.resonators {
            if r.qubits.contains(&q.id) {
                degree += 1;
                partners.extend(r.qubits.iter().filter(|&&o| o != q.id));
            }
        }
        assert_eq!(degree, 2);
        assert_eq!(f.stats.qf[q.id], partners.len());
    }
}

#[test]
fn shared_qubits_get_distinct_classes() {
    let doc = plan(Topology::Planar { d: 3 }, 1.0).unwrap();
    let f = &doc.floorplan;
    for a in &f.resonators {
        for b in f.resonators.iter().filter(|b| b.id > a.id) {
            if a.qubits.iter().any(|q| b.qubits.contains(q)) {
                assert_ne!(a.class, b.class);
            }
        }
    }
}

#[test]
fn a_lone_resonator_needs_one_class() {
    let mut f = two_qubit_plan();
    f.assign_frequencies(1.0);
    assert_eq!(f.stats.frequency_classes, 1);
    assert_eq!(f.stats.qf, vec![1, 1]);
}

#[test]
fn distance_five_pattern_repeats() {
    let doc = plan(Topology::Planar { d: 5 }, 1.0).unwrap();
    assert!(doc.floorplan.stats.frequency_classes <= 8);
    assert!(doc.period.is_some());
    assert!(doc.floorplan.crossings().is_empty());
    assert!(doc.floorplan.resonators.iter().any(|r| r.kind == ResonatorKind::Stub));
}

#[test]
fn svg_draws_every_qubit() {
    let doc = plan(Topology::Planar { d: 3 }, 1.0).unwrap();
    assert_eq!(doc.to_svg().matches("<circle").count(), doc.floorplan.qubits.len());
}
