//! Drive the verification suites programmatically and assemble a JSON
//! report — the same machinery behind `elliptic-hermite verify`.
//!
//! Run with: `cargo run --release --example verification_report`

use elliptic_hermite::report::Report;
use elliptic_hermite::suites::{run_suite, SuiteConfig};

fn main() -> elliptic_hermite::Result<()> {
    let cfg = SuiteConfig {
        tau: 0.4,
        max_degree: 6,
        n_q: 48,
        seed: 2024,
        kmax: 200,
        trials: 4,
    };

    let mut checks = Vec::new();
    for suite in ["poly", "hermite", "operators", "quadrature", "kernels"] {
        checks.extend(run_suite(suite, &cfg)?);
    }

    let report = Report::new(
        "verify",
        serde_json::json!({"tau": cfg.tau, "max_degree": cfg.max_degree, "quad": cfg.n_q}),
        checks,
        false,
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serialize")
    );
    eprintln!(
        "\n{} checks, overall pass = {}",
        report.checks.len(),
        report.pass
    );
    Ok(())
}
