//! The sign-tuple system of a Bell experiment and the related-variables check.

use qvars::experiments::{theorem3_demo, BellVariables};
use qvars::varlattice::is_related;

fn main() -> qvars::Result<()> {
    let bell = BellVariables::new();
    println!("{}\n{}\n{}", bell.theta, bell.eta, bell.lambda);

    let report = theorem3_demo()?;
    println!();
    for c in &report.checks {
        println!(
            "[{}] {} ({})",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("\nstatus: {}", report.results["theorem3"]["status"]);

    let wider = bell.extended_group();
    println!(
        "with both swaps (order {}): theta~lambda {}, eta~lambda {}",
        wider.order(),
        is_related(&bell.theta, &bell.lambda, &wider)?.is_some(),
        is_related(&bell.eta, &bell.lambda, &wider)?.is_some(),
    );
    Ok(())
}
