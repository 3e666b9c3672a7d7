use ortho_core::suite::{run_result_suite, RESULT_IDS};
use ortho_core::Budget;

#[test]
fn every_result_passes() {
    let report = run_result_suite(&Budget::default()).unwrap();
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, RESULT_IDS);
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} {:?}", c.name, c.witness))
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
    let counter = report
        .checks
        .iter()
        .find(|c| c.name == "two-point-counterexample")
        .unwrap();
    assert!(counter
        .detail
        .as_deref()
        .unwrap()
        .contains("two-point counterexample: |FC(X)| = 3 ≠ 2 = |X|"));
}

#[test]
fn suite_output_is_deterministic() {
    let a = run_result_suite(&Budget::default()).unwrap().to_json();
    let b = run_result_suite(&Budget::default()).unwrap().to_json();
    assert_eq!(a, b);
}
