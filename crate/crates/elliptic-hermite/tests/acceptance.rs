//! Acceptance battery: one test per criterion, each printing its pass/fail
//! line (visible with `--nocapture`). Sizes and tolerances are pinned inside
//! `suites::acceptance`; the same checks are reachable through
//! `elliptic-hermite verify --suite acceptance`.

use std::time::Instant;

use elliptic_hermite::suites::acceptance;

fn run_criterion(id: usize, budget_secs: f64) {
    let t0 = Instant::now();
    let criterion = acceptance::run(id).expect("criterion execution");
    let elapsed = t0.elapsed().as_secs_f64();
    let status = if criterion.pass() { "PASS" } else { "FAIL" };
    println!(
        "[{status}] criterion {id} ({}): max_err = {:.3e}, {} checks, {:.2}s",
        criterion.name,
        criterion.max_err(),
        criterion.checks.len(),
        elapsed
    );
    for check in &criterion.checks {
        println!(
            "        {} -> {:.3e} (tol {:.1e}, {:?}, {})",
            check.check,
            check.max_abs_err,
            check.tol,
            check.kind,
            if check.pass { "ok" } else { "FAILED" }
        );
    }
    assert!(
        criterion.pass(),
        "criterion {id} ({}) failed: {:?}",
        criterion.name,
        criterion
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| (&c.check, c.max_abs_err, c.tol))
            .collect::<Vec<_>>()
    );
    assert!(
        elapsed <= budget_secs,
        "criterion {id} exceeded its runtime budget: {elapsed:.1}s > {budget_secs}s"
    );
}

#[test]
fn criterion_1_three_route_agreement() {
    run_criterion(1, 10.0);
}

#[test]
fn criterion_2_eigen_polyanalytic() {
    run_criterion(2, 5.0);
}

#[test]
fn criterion_3_orthogonality() {
    run_criterion(3, 60.0);
}

#[test]
fn criterion_4_negative_tests() {
    run_criterion(4, 5.0);
}

#[test]
fn criterion_5_generating_functions() {
    run_criterion(5, 5.0);
}

#[test]
fn criterion_6_kernel_suite() {
    run_criterion(6, 120.0);
}

#[test]
fn criterion_7_identity_library() {
    run_criterion(7, 10.0);
}

#[test]
fn criterion_8_random_matrix_suite() {
    run_criterion(8, 300.0);
}

#[test]
fn criterion_9_quadrature() {
    run_criterion(9, 5.0);
}
