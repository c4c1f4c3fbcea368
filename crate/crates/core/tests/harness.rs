use pathatlas::harness::{run_suite, Exec, Status, SuiteConfig, SUITES};

#[test]
fn every_suite_passes_a_smoke_run() {
    let report = run_suite("all", &SuiteConfig::new(1, 2)).unwrap();
    print!("{}", report.to_json_lines(true));
    assert_eq!(report.checks.len(), SUITES.len());
    for c in &report.checks {
        assert_eq!(c.status, Status::Pass, "{}: {:?}", c.name, c.detail);
    }
}

#[test]
fn reports_are_deterministic_across_runs_and_executors() {
    let mut cfg = SuiteConfig::new(7, 3);
    let a = run_suite("concat-isometry", &cfg).unwrap().canonical();
    let b = run_suite("concat-isometry", &cfg).unwrap().canonical();
    cfg.exec = Exec::Sequential;
    let c = run_suite("concat-isometry", &cfg).unwrap().canonical();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("no-such-suite", &SuiteConfig::new(0, 1)).is_err());
}
