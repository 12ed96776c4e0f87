use proptest::prelude::*;
use surfacelab_core::budget::{
    algorithm_failure, baseline_rate, gadget_failure, min_failure, required_distance, BudgetModel, STEANE_C, X_MAX,
};
use surfacelab_core::codes::{surface_lattice, Topology};
use surfacelab_core::planner::{fanout_report, generate_tiling};

#[test]
fn required_distance_agrees_with_a_full_scan() {
    let m = BudgetModel::Concatenated { c: 100.0 };
    let (t, n, p, eps): (f64, f64, f64, f64) = (1e6, 1e6, 1e-3, 1e-3);
    let scan = (0..=X_MAX).find(|&x| {
        let c_x = 100f64.powi(x as i32);
        (t * n * c_x * p.powi(x as i32 + 1)).min(1.0) <= eps * (1.0 + 1e-12)
    });
    assert_eq!(required_distance(&m, t, n, p, eps), scan);
    assert_eq!(scan, Some(12));
    assert_eq!(required_distance(&m, t, n, p, 1.0), Some(0));
    assert_eq!(required_distance(&BudgetModel::Concatenated { c: STEANE_C }, t, n, 1e-3, 1e-3), None);
}

#[test]
fn uncorrected_runs_need_absurd_error_rates() {
    assert_eq!(baseline_rate(1e12, 1e3), 1e-15);
    let m = BudgetModel::Concatenated { c: STEANE_C };
    assert_eq!(algorithm_failure(&m, 1e12, 1e3, 0, 1e-15), Some(1.0));
}

#[test]
fn polynomial_growth_has_a_failure_floor() {
    let m = BudgetModel::Polynomial { c: 1.0 };
    let (_, floor) = min_failure(&m, 1e9, 1e3, 0.02, 100).unwrap();
    assert!(floor > 1e-3);
    let m = BudgetModel::Concatenated { c: 1.0 / 0.02 * 0.5 };
    let (_, vanishing) = min_failure(&m, 1e9, 1e3, 0.01, 100).unwrap();
    assert!(vanishing < 1e-20);
}

proptest! {
    #[test]
    fn gadget_failure_is_monotone(c in 1.0f64..1e5, x in 0u32..30, p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let m = BudgetModel::Concatenated { c };
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(gadget_failure(&m, x, lo).unwrap() <= gadget_failure(&m, x, hi).unwrap());
        let below = lo * (1.0 / c);
        prop_assert!(gadget_failure(&m, x + 1, below).unwrap() <= gadget_failure(&m, x, below).unwrap());
    }
}

#[test]
fn planner_invariants_up_to_distance_eleven() {
    for d in (3..=11).step_by(2) {
        let lat = surface_lattice(Topology::Planar { d }).unwrap();
        let mut plan = generate_tiling(&lat);
        assert_eq!(plan.tiles.len(), lat.rows * lat.cols);
        assert!(plan.resonators_of().iter().all(|r| r.len() == 2), "d={d}");
        assert!(plan.tiles.iter().all(|t| t.qubits.iter().all(|&q| plan.qubits[q].tile == t.id)));
        plan.assign_frequencies(1.0);
        assert!(plan.monochromatic(1.0).is_empty());
        assert!(plan.crossings().is_empty());
        let rep = fanout_report(&plan);
        for t in &plan.tiles {
            let bulk = t.row > 0 && t.col > 0 && t.row + 1 < lat.rows && t.col + 1 < lat.cols;
            if bulk {
                assert_eq!(rep.tile_qf[t.id], 4);
            } else {
                assert!((2..=3).contains(&rep.tile_qf[t.id]));
                assert!(rep.flagged_tiles.contains(&t.id));
            }
        }
    }
}

#[test]
fn toric_tiles_all_reach_four_neighbours() {
    let lat = surface_lattice(Topology::Toric { l: 4 }).unwrap();
    let mut plan = generate_tiling(&lat);
    assert!(plan.resonators_of().iter().all(|r| r.len() == 2));
    assert!(fanout_report(&plan).flagged_tiles.is_empty());
    assert!(plan.assign_frequencies(1.0).is_some());
    assert!(plan.monochromatic(1.0).is_empty());
}
