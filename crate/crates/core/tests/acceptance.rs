use std::io::Write;

use quadbound_core::verify::{run_all, CriterionResult, VerifyOptions, CRITERION_COUNT};

/// Criteria that cannot pass as stated, each with the reason.
const UNATTAINABLE: &[(usize, &str)] = &[(
    6,
    "the lebesgue kappa0 equals (pi/4)(c-1)^3 (c+1)^2/c^7, whose ratio to pi(c-1)^3 is 0.942 at c = 1.01",
)];

/// Writes past the test harness's output capture so that the report lands in
/// the log of every run.
fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

fn check(results: &[CriterionResult]) {
    assert_eq!(results.len(), CRITERION_COUNT);
    for r in results {
        match UNATTAINABLE.iter().find(|(id, _)| *id == r.id) {
            Some(_) => assert!(!r.passed, "criterion {} now passes; update the list", r.id),
            None => assert!(r.passed, "{r}"),
        }
    }
}

#[test]
fn acceptance_criteria() {
    let results = run_all(&VerifyOptions::default());
    for r in &results {
        report(&r.to_string());
    }
    for (id, why) in UNATTAINABLE {
        report(&format!("criterion {id} is expected to fail: {why}"));
    }
    check(&results);
}

#[test]
fn loosened_tolerance_still_passes() {
    let opts = VerifyOptions {
        tol: 1e-2,
        ..VerifyOptions::default()
    };
    check(&run_all(&opts));
}

#[test]
fn perturbed_gamma_is_detected() {
    let opts = VerifyOptions {
        perturb_gamma: true,
        ..VerifyOptions::default()
    };
    let r = quadbound_core::verify::run_criterion(1, &opts);
    report(&format!("perturbed gamma: {r}"));
    assert!(!r.passed);
}
