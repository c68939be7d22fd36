use gl3inv::suites::*;

#[test]
fn every_check_passes_and_reports_are_reproducible() {
    let cfg = SuiteConfig::all(20240917);
    let a = run_suites(&cfg).unwrap();
    for c in a.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "{} {:e} > {:e} {:?}",
            c.id, c.max_residual, c.tolerance, c.error
        );
    }
    assert!(a.all_passed(), "{:?}", a.summary);
    assert_eq!(a.summary.total, checks().len());
    let b = run_suites(&cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn other_seeds_also_pass() {
    for seed in [1, 99] {
        let r = run_suites(&SuiteConfig::all(seed)).unwrap();
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!("seed {seed}: {} {:e} {:?}", c.id, c.max_residual, c.error);
        }
        assert!(r.all_passed());
    }
}

#[test]
fn a_tightened_tolerance_fails_the_check() {
    let mut cfg = SuiteConfig::all(7);
    cfg.suites = vec![Suite::Derivs];
    cfg.tolerance_overrides
        .insert("derivs.chain-rule".into(), 0.0);
    let r = run_suites(&cfg).unwrap();
    assert!(!r.check("derivs.chain-rule").unwrap().passed);
    assert_eq!(r.summary.failed, 1);
    assert!(r.checks.iter().all(|c| c.suite == Suite::Derivs));
}
