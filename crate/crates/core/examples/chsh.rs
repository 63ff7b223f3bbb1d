//! CHSH: singlet value against a shared-phi local model.
//!
//! `cargo run --release --example chsh -- 1000000`

use qvars::experiments::{chsh_lhv, chsh_lhv_exact, chsh_quantum, ChshSetting, CHSH_TERMS};
use qvars::rng::RngStream;

fn main() -> qvars::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200_000);
    let settings = [
        ChshSetting::optimal(),
        ChshSetting::new(0.0, 90.0, 45.0, 135.0)?,
    ];
    for setting in settings {
        let q = chsh_quantum(&setting)?;
        let exact = chsh_lhv_exact(&setting);
        let est = chsh_lhv(&setting, n, &RngStream::new(11, 0), 0)?;
        println!("{}", setting.label());
        for (i, name) in CHSH_TERMS.iter().enumerate() {
            println!(
                "  {name:<8} quantum {:+.6}  local exact {:+.6}  simulated {:+.6} +- {:.1e}",
                q.terms[i], exact[i], est.terms[i].value, est.terms[i].stderr
            );
        }
        println!(
            "  S: quantum {:+.9}, simulated {:+.6} +- {:.1e}\n",
            q.s, est.s, est.stderr
        );
    }
    Ok(())
}
