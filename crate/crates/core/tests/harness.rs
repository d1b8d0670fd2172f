use std::f64::consts::E;

use smsemoa::algorithms::{AlgorithmConfig, UpdateRule};
use smsemoa::benchmarks::ProblemInstance;
use smsemoa::harness::{bound_value, run_experiment, ExperimentSpec, RawSettings, Theorem};
use smsemoa::variation::MutationOperator;

fn omm_spec(reps: usize, seed: u64) -> ExperimentSpec {
    let inst = ProblemInstance::one_min_max(20).unwrap();
    let cfg = AlgorithmConfig::sms_emoa(21, MutationOperator::Standard, UpdateRule::Standard, 10_000_000, seed);
    ExperimentSpec::new(inst, cfg, reps)
}

#[test]
fn oneminmax_hundred_reps() {
    let mut spec = omm_spec(100, 5);
    spec.bounds = true;
    let out = run_experiment(&spec).unwrap();
    assert_eq!(out.rows.len(), 100);
    assert_eq!(out.summary.runs, 100);
    assert_eq!(out.summary.censored, 0);
    assert!(out.summary.mean > 0.0);
    let report = out.bounds.unwrap();
    let row = &report.rows[0];
    assert_eq!(row.name, "omm");
    assert!((row.value - 2.0 * E * 21.0 * 20.0 * (20f64.ln() + 1.0)).abs() < 1e-9);
    assert!((row.value - 9123.7).abs() < 0.1);
    assert!(row.pass && row.mu_condition);
    for r in &out.rows {
        assert_eq!(r.evaluations, 21 + r.iterations);
        assert_eq!(r.seed, 5);
    }
}

#[test]
fn csv_is_byte_identical_for_same_seed() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = omm_spec(8, 9);
    a.timing = false;
    a.output = Some(dir.path().join("a.csv"));
    let mut b = a.clone();
    b.output = Some(dir.path().join("b.csv"));
    b.threads = Some(2);
    run_experiment(&a).unwrap();
    run_experiment(&b).unwrap();
    let bytes = std::fs::read(dir.path().join("a.csv")).unwrap();
    assert_eq!(bytes, std::fs::read(dir.path().join("b.csv")).unwrap());
    assert_eq!(String::from_utf8(bytes).unwrap().lines().count(), 9);
}

#[test]
fn bound_examples() {
    let omm = ProblemInstance::one_min_max(20).unwrap();
    let lotz = ProblemInstance::lotz(20).unwrap();
    let mojzj = ProblemInstance::mojzj(12, 4, 2).unwrap();
    let cfg = |mu| AlgorithmConfig::sms_emoa(mu, MutationOperator::Standard, UpdateRule::Standard, 1, 0);
    assert!((bound_value(Theorem::Omm, &omm, &cfg(21)).unwrap() - 2.0 * E * 21.0 * 20.0 * (20f64.ln() + 1.0)).abs() < 1e-9);
    assert!((bound_value(Theorem::Lotz, &lotz, &cfg(21)).unwrap() - 2.0 * E * 21.0 * 400.0).abs() < 1e-9);
    let sms = E * 49.0 * 16.0 * (1.0 + 4f64.ln()) + E * 49.0 * 25.0 * 144.0;
    assert!((bound_value(Theorem::Sms, &mojzj, &cfg(49)).unwrap() - sms).abs() < 1e-6);
    assert!(bound_value(Theorem::Lotz, &omm, &cfg(21)).unwrap_err().is_usage());
}

#[test]
fn settings_resolve_like_the_cli() {
    let raw = RawSettings::parse("problem=mojzj:n=8,m=4,k=2\nalgo=gsemo\nreps=3\nseed=4\ntiming=false").unwrap();
    let spec = raw.resolve().unwrap();
    let out = run_experiment(&spec).unwrap();
    assert_eq!(out.rows.len(), 3);
    assert!(out.rows.iter().all(|r| r.algo == "gsemo" && r.evaluations == r.iterations + 1 && r.seconds == 0.0));
}

#[test]
fn censoring_is_excluded_from_means() {
    let inst = ProblemInstance::mojzj(12, 4, 3).unwrap();
    let cfg = AlgorithmConfig::sms_emoa(49, MutationOperator::Standard, UpdateRule::Standard, 3, 0);
    let mut spec = ExperimentSpec::new(inst, cfg, 4);
    spec.bounds = true;
    let out = run_experiment(&spec).unwrap();
    assert_eq!(out.summary.censored, 4);
    assert!(out.summary.mean.is_nan());
    assert!(out.rows.iter().all(|r| r.censored && r.iterations == 3));
    assert!(!out.bounds.unwrap().passed());
}

#[test]
fn io_failure_is_not_a_usage_error() {
    let mut spec = omm_spec(1, 0);
    spec.output = Some("/nonexistent-dir/x.csv".into());
    let err = run_experiment(&spec).unwrap_err();
    assert!(!err.is_usage());
}
