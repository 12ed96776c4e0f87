use proptest::prelude::*;
use surfacelab::config::ExperimentConfig;
use surfacelab::runner::run_memory_experiment;
use surfacelab::stats::wilson_interval;
use surfacelab::table::{Provenance, ResultTable, Row};
use surfacelab::threshold::{estimate_threshold, log_log_slope, pair_crossing};
use surfacelab::LabError;

/// Roots of `(phat - p)^2 = z^2 p (1 - p) / n`, solved as a quadratic in `p`.
fn wilson_by_quadratic(f: u64, n: u64, z: f64) -> (f64, f64) {
    let (phat, n) = (f as f64 / n as f64, n as f64);
    let a = 1.0 + z * z / n;
    let b = -(2.0 * phat + z * z / n);
    let c = phat * phat;
    let disc = (b * b - 4.0 * a * c).sqrt();
    ((-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a))
}

#[test]
fn wilson_matches_the_quadratic_roots() {
    let (lo, hi) = wilson_interval(10, 100, 0.95);
    let (qlo, qhi) = wilson_by_quadratic(10, 100, 1.959_963_984_540_054);
    assert!((lo - qlo).abs() < 1e-9 && (hi - qhi).abs() < 1e-9, "{lo} {hi} vs {qlo} {qhi}");
    assert_eq!(wilson_interval(0, 1000, 0.95).0, 0.0);
    assert_eq!(wilson_interval(1000, 1000, 0.95).1, 1.0);
}

proptest! {
    #[test]
    fn wilson_contains_the_estimate(n in 1u64..100_000, frac in 0.0f64..=1.0) {
        let f = ((n as f64) * frac).floor() as u64;
        let (lo, hi) = wilson_interval(f, n, 0.95);
        let phat = f as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= phat && phat <= hi && hi <= 1.0);
    }
}

fn table(curves: &[(usize, Vec<f64>)], p: &[f64]) -> ResultTable {
    let rows = curves
        .iter()
        .flat_map(|(d, pl)| {
            p.iter().zip(pl).map(move |(&p, &p_l)| Row {
                preset: "synthetic".into(),
                d: *d,
                p,
                rounds: *d,
                shots: 1,
                failures: 0,
                p_l,
                ci_lo: p_l,
                ci_hi: p_l,
            })
        })
        .collect();
    ResultTable {
        provenance: Provenance {
            format: "surfacelab-table".into(),
            format_version: 1,
            version: "test".into(),
            seed: 0,
            config_sha256: String::new(),
            created_unix: 0,
        },
        rows,
    }
}

#[test]
fn planted_crossing_is_recovered() {
    let cfg = ExperimentConfig::parse(
        r#"{"preset":"circuit_level","p":[0.004,0.005,0.006,0.007,0.008,0.009,0.01,0.011],
            "distances":[3,5,7],"shots":1000000,"seed":3,"synthetic":{"p_star":0.0075}}"#,
        "inline",
    )
    .unwrap();
    let rep = estimate_threshold(&run_memory_experiment(&cfg).unwrap()).unwrap();
    assert!((rep.estimate - 0.0075).abs() < 0.05 * 0.0075, "{}", rep.estimate);
    assert_eq!(rep.pairs.len(), 2);
}

#[test]
fn identical_or_parallel_curves_have_no_bracket() {
    let p = [0.01, 0.02, 0.03];
    let same = table(&[(3, vec![0.1, 0.2, 0.3]), (5, vec![0.1, 0.2, 0.3])], &p);
    assert!(matches!(estimate_threshold(&same), Err(LabError::BracketNotFound(_))));
    let apart = table(&[(3, vec![0.1, 0.2, 0.3]), (5, vec![0.01, 0.02, 0.03])], &p);
    let err = estimate_threshold(&apart).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    assert!(pair_crossing(&p, &[0.1, 0.2, 0.3], &[0.05, 0.2, 0.4]).is_none());
}

#[test]
fn slope_of_a_power_law() {
    let x = [1e-3, 2e-3, 4e-3];
    let y: Vec<f64> = x.iter().map(|v: &f64| 7.0 * v.powi(2)).collect();
    assert!((log_log_slope(&x, &y) - 2.0).abs() < 1e-12);
}
