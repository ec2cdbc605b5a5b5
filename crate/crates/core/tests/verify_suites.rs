use clifford_prym::verify::{run_all, suites};

#[test]
fn every_suite_passes() {
    let report = run_all(0);
    for s in &report.suites {
        assert!(s.pass, "{}/{} failed: {}", s.module, s.name, s.detail);
    }
    assert_eq!(report.suites.len(), suites().len());
}

#[test]
fn report_is_deterministic() {
    let a = run_all(3).to_json();
    let b = run_all(3).to_json();
    assert_eq!(a, b);
}
