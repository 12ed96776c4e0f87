use surfacelab::config::ExperimentConfig;
use surfacelab::runner::run_memory_experiment;
use surfacelab::table::ResultTable;
use surfacelab::LabError;

const MINIMAL: &str = r#"{"preset":"circuit_level","p":[0.004],"distances":[3],"shots":100,"seed":1}"#;

#[test]
fn unknown_keys_are_rejected() {
    let err = ExperimentConfig::parse(
        r#"{"preset":"circuit_level","p":[0.004],"distances":[3],"shots":100,"seed":1,"sots":5}"#,
        "x.json",
    )
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("sots"));
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = ExperimentConfig::parse("{\n  \"preset\": circuit_level\n}", "bad.json").unwrap_err();
    match err {
        LabError::ConfigSyntax { line, column, .. } => assert_eq!((line, column), (2, 13)),
        e => panic!("{e}"),
    }
}

#[test]
fn invalid_values_are_rejected() {
    for bad in [
        r#"{"preset":"circuit_level","p":[0.004],"distances":[3],"shots":0,"seed":1}"#,
        r#"{"preset":"circuit_level","p":[0.01,0.004],"distances":[3],"shots":1,"seed":1}"#,
        r#"{"preset":"circuit_level","p":[0.004],"distances":[4],"shots":1,"seed":1}"#,
        r#"{"preset":"circuit_level","p":[0.004],"distances":[3],"shots":1,"seed":1,"rounds":0}"#,
        r#"{"preset":"loud","p":[0.004],"distances":[3],"shots":1,"seed":1}"#,
    ] {
        assert_eq!(ExperimentConfig::parse(bad, "x").unwrap_err().exit_code(), 2, "{bad}");
    }
}

#[test]
fn hash_ignores_threads_and_outputs() {
    let a = ExperimentConfig::parse(MINIMAL, "a").unwrap();
    let mut b = a.clone();
    b.threads = Some(3);
    b.output_csv = Some("elsewhere.csv".into());
    assert_eq!(a.hash(), b.hash());
    b.seed = 2;
    assert_ne!(a.hash(), b.hash());
}

#[test]
fn tables_round_trip_through_csv_and_json() {
    let cfg = ExperimentConfig::parse(MINIMAL, "a").unwrap();
    let t = run_memory_experiment(&cfg).unwrap();
    assert_eq!(ResultTable::from_csv(&t.to_csv()).unwrap(), t);
    assert_eq!(ResultTable::from_json(&t.to_json()).unwrap(), t);
    let header = t.to_csv().lines().find(|l| !l.starts_with('#')).unwrap().to_string();
    assert_eq!(header, "preset,d,p,rounds,shots,failures,p_l,ci_lo,ci_hi");
}

#[test]
fn zero_noise_never_fails() {
    let cfg = ExperimentConfig::parse(
        r#"{"preset":"circuit_level","p":[0.0],"distances":[3,5],"shots":300,"seed":9}"#,
        "a",
    )
    .unwrap();
    assert!(run_memory_experiment(&cfg).unwrap().rows.iter().all(|r| r.failures == 0));
}

#[test]
fn thread_budget_does_not_change_results() {
    let text = r#"{"preset":"circuit_level","p":[0.006,0.01],"distances":[3,5],"shots":2500,"seed":4,"threads":1}"#;
    let one = ExperimentConfig::parse(text, "a").unwrap();
    let mut three = one.clone();
    three.threads = Some(3);
    let (a, b) = (run_memory_experiment(&one).unwrap(), run_memory_experiment(&three).unwrap());
    assert_eq!(a.rows, b.rows);
    assert!(a.rows.iter().any(|r| r.failures > 0));
}

#[test]
fn toric_memory_runs() {
    let cfg = ExperimentConfig::parse(
        r#"{"lattice":"toric","preset":"phenomenological","p":[0.0,0.02],"distances":[4],"shots":200,"seed":2}"#,
        "a",
    )
    .unwrap();
    let t = run_memory_experiment(&cfg).unwrap();
    assert_eq!(t.rows[0].failures, 0);
}

#[test]
fn larger_code_wins_well_below_threshold() {
    let cfg = ExperimentConfig::parse(
        r#"{"preset":"circuit_level","p":[0.002],"distances":[3,5],"shots":100000,"seed":11}"#,
        "a",
    )
    .unwrap();
    let t = run_memory_experiment(&cfg).unwrap();
    let (d3, d5) = (&t.rows[0], &t.rows[1]);
    assert!(d5.ci_hi < d3.ci_lo, "d=3 {:?} d=5 {:?}", (d3.ci_lo, d3.ci_hi), (d5.ci_lo, d5.ci_hi));
}
