//! Singlet anti-correlation and the spectrum of the dot-product operator.

use qvars::experiments::{epr_bohm_report, same_direction_probabilities, EPR_DIRECTIONS};

fn main() -> qvars::Result<()> {
    let report = epr_bohm_report()?;
    for c in &report.checks {
        println!(
            "[{}] {} ({})",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("\ndirection  P(+,+)  P(-,-)  P(opposite)");
    for angle in EPR_DIRECTIONS {
        let [pp, mm, opp] = same_direction_probabilities(angle)?;
        println!("{angle:>9}  {pp:.1e}  {mm:.1e}  {opp:.12}");
    }
    Ok(())
}
