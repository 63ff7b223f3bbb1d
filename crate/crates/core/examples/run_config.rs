//! Runs every bundled config through the library runner into a temp directory.
//!
//! `cargo run --example run_config`

use std::path::Path;

use qvars::cli::{run, Overrides};

fn main() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let out = std::env::temp_dir().join("qvars-reports");
    let overrides = Overrides {
        output: Some(out.clone()),
        samples: Some(50_000),
        ..Overrides::default()
    };
    let mut entries: Vec<_> = std::fs::read_dir(&configs)
        .expect("configs directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    entries.sort();
    for path in entries {
        let code = run(&path, &overrides, &mut std::io::stderr());
        println!(
            "{}: exit {code}",
            path.file_name().unwrap().to_string_lossy()
        );
    }
    println!("reports in {}", out.display());
}
