//! End-to-end runner tests: config parsing, report assembly, caching, and
//! the report determinism contract.

use growthlab_cli::config::ExperimentConfig;
use growthlab_cli::run;

fn parse(json: &str) -> ExperimentConfig {
    serde_json::from_str(json).expect("valid config")
}

fn strip_nondeterministic(doc: &mut serde_json::Value) {
    let obj = doc.as_object_mut().unwrap();
    obj.remove("wall_clock_seconds");
    obj.remove("cache_events");
}

#[test]
fn empty_experiment_list_is_a_valid_report() {
    let cfg = parse(r#"{"group": {"kind": "symmetric", "n": 3}, "experiments": []}"#);
    let report = run(&cfg, None).unwrap();
    assert!(report.passed());
    assert!(report.results.is_empty());
    assert_eq!(report.group.order, 6);
}

#[test]
fn s3_table_audit_reports_forced_degrees() {
    let cfg = parse(
        r#"{"group": {"kind": "symmetric", "n": 3},
            "experiments": [{"name": "table-audit"}]}"#,
    );
    let report = run(&cfg, None).unwrap();
    assert!(report.passed());
    let doc = serde_json::to_value(&report).unwrap();
    assert_eq!(
        doc["results"][0]["result"]["degrees"],
        serde_json::json!([1, 1, 2])
    );
}

#[test]
fn glps_experiment_on_a5() {
    let cfg = parse(
        r#"{"group": {"kind": "alternating", "n": 5},
            "experiments": [{"name": "glps-identity", "pairs": 3, "seed": 1}]}"#,
    );
    let report = run(&cfg, None).unwrap();
    assert!(report.passed());
    let doc = serde_json::to_value(&report).unwrap();
    let dev = doc["results"][0]["result"]["max_deviation"]
        .as_f64()
        .unwrap();
    assert!(dev <= 1e-6);
}

#[test]
fn missing_sets_become_config_errors() {
    let cfg = parse(
        r#"{"group": {"kind": "alternating", "n": 5},
            "experiments": [{"name": "skew-search"}]}"#,
    );
    let err = run(&cfg, None).unwrap_err();
    assert!(format!("{err:#}").contains("sets.a"));
}

#[test]
fn order_cap_violations_surface() {
    let cfg = parse(r#"{"group": {"kind": "symmetric", "n": 9}, "experiments": []}"#);
    let err = run(&cfg, None).unwrap_err();
    assert!(format!("{err:#}").contains("cap"));
}

#[test]
fn order_cap_override_allows_larger_groups() {
    let cfg =
        parse(r#"{"group": {"kind": "symmetric", "n": 8}, "order_cap": 50000, "experiments": []}"#);
    assert_eq!(run(&cfg, None).unwrap().group.order, 40320);
}

#[test]
fn reports_are_deterministic_modulo_timestamp() {
    let cfg = parse(
        r#"{"group": {"kind": "alternating", "n": 5},
            "sets": {"a": {"kind": "random", "size": 7, "seed": 5},
                     "b": {"kind": "random", "size": 9, "seed": 6}},
            "experiments": [
                {"name": "table-audit"},
                {"name": "skew-search"},
                {"name": "wrapping-audit", "instances": 5, "seed": 11},
                {"name": "trajectory", "steps": 4},
                {"name": "umvirate-scan", "t_max": 2},
                {"name": "xcount", "n": 8, "type_a": [3], "type_b": [3],
                 "subset_a": {"random": {"size": 12, "seed": 3}},
                 "subset_b": {"random": {"size": 9, "seed": 4}},
                 "mc": {"seed": 21, "samples": 400}}
            ]}"#,
    );
    let mut first = serde_json::to_value(run(&cfg, None).unwrap()).unwrap();
    let mut second = serde_json::to_value(run(&cfg, None).unwrap()).unwrap();
    strip_nondeterministic(&mut first);
    strip_nondeterministic(&mut second);
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );
}

#[test]
fn cache_round_trips_through_the_runner() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse(
        r#"{"group": {"kind": "psl2", "q": 7},
            "experiments": [{"name": "table-audit"}]}"#,
    );
    let first = run(&cfg, Some(dir.path())).unwrap();
    assert!(first.cache_events[0].contains("miss"));
    let second = run(&cfg, Some(dir.path())).unwrap();
    assert!(second.cache_events[0].contains("hit"));
    // identical table values through the cache
    let a = serde_json::to_value(&first).unwrap();
    let b = serde_json::to_value(&second).unwrap();
    assert_eq!(
        a["results"][0]["result"]["report"],
        b["results"][0]["result"]["report"]
    );
}

#[test]
fn prob_experiments_use_their_own_degree() {
    // the configured group is S_3; the xcount runs at n = 8 regardless
    let cfg = parse(
        r#"{"group": {"kind": "symmetric", "n": 3},
            "experiments": [
                {"name": "disjoint-prob", "n": 8, "m": 3, "r": 3,
                 "mc": {"seed": 5, "samples": 4000}},
                {"name": "xcount", "n": 8, "type_a": [3], "type_b": [3],
                 "subset_a": "full", "subset_b": "full",
                 "mc": {"seed": 9, "samples": 300}}
            ]}"#,
    );
    let report = run(&cfg, None).unwrap();
    assert!(
        report.passed(),
        "{}",
        serde_json::to_string_pretty(&report).unwrap()
    );
}

#[test]
fn order_probe_against_materialized_a7() {
    let cfg = parse(
        r#"{"group": {"kind": "alternating", "n": 7},
            "experiments": [
                {"name": "order-probe",
                 "a": [1,2,0,3,4,5,6],
                 "a_prime": [0,1,2,4,5,3,6],
                 "x": [1,2,0,4,5,3,6],
                 "mc": {"seed": 3, "samples": 500}}
            ]}"#,
    );
    let report = run(&cfg, None).unwrap();
    assert!(report.passed());
    let doc = serde_json::to_value(&report).unwrap();
    assert_eq!(
        doc["results"][0]["result"]["exact"],
        serde_json::json!(true)
    );
}

#[test]
fn gluck_scan_requires_psl2() {
    let cfg = parse(
        r#"{"group": {"kind": "alternating", "n": 5},
            "experiments": [{"name": "gluck-scan"}]}"#,
    );
    assert!(run(&cfg, None).is_err());
}

#[test]
fn verdict_fail_on_tolerance_violation() {
    // an impossibly tight tolerance forces a failing verdict, exercising
    // the exit-status contract
    let cfg = parse(
        r#"{"group": {"kind": "symmetric", "n": 4},
            "experiments": [{"name": "adjointness", "count": 2, "seed": 1,
                             "tolerance": 1e-30}]}"#,
    );
    let report = run(&cfg, None).unwrap();
    assert!(!report.passed());
    assert_eq!(report.verdict, "fail");
}
